"""
Truncated formal power series.

Coefficients may be any ring elements that mix with ``int`` and
``Fraction``: ``MPoly`` for symbolic work, ``Fraction`` for exact numbers,
``complex`` for the numeric harness. Every operation here is pure and
returns a new value.

Two shapes carry invariants of their own:

* ``UnitSeries``   1 + u_1 z + ... + u_N z^N   (f(z)/z and its powers)
* ``NormalizedSeries``   z + a_2 z^2 + ... + a_N z^N
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MPoly

DEFAULT_ORDER = 10
MAX_ORDER = 16


class OrderMismatchError(ValueError):
    pass


class NonUnitError(ValueError):
    """The series does not have the constant term the operation needs."""


def _is_zero(c) -> bool:
    return c == 0


def _is_one(c) -> bool:
    return c == 1


@dataclass(frozen=True)
class Series:
    """Coefficients of z^0 .. z^N."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __add__(self, other):
        _check_orders(self, other)
        return Series(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _check_orders(self, other)
        return Series(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, r):
        return Series(tuple(c * r for c in self.coeffs))

    def truncate(self, order: int):
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return type(self)(self.coeffs[: order + 1])


class UnitSeries(Series):
    def __post_init__(self):
        super().__post_init__()
        if not _is_one(self.coeffs[0]):
            raise NonUnitError(f"constant term must be 1, got {self.coeffs[0]}")


@dataclass(frozen=True)
class NormalizedSeries:
    """Coefficients of z^1 .. z^N with the z^1 coefficient equal to 1."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("order must be at least 1")
        if not _is_one(self.coeffs[0]):
            raise NonUnitError(f"z coefficient must be 1, got {self.coeffs[0]}")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, n: int):
        """Coefficient of z^n (n >= 1); zero beyond the truncation order."""
        if n < 1:
            raise IndexError("normalized series start at z^1")
        return self.coeffs[n - 1] if n <= self.order else 0

    def over_z(self) -> UnitSeries:
        """f(z)/z as a unit series of order N - 1."""
        return UnitSeries(self.coeffs)

    def as_series(self) -> Series:
        return Series((0,) + self.coeffs)

    def truncate(self, order: int):
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return NormalizedSeries(self.coeffs[:order])

    @classmethod
    def identity(cls, order: int, one=1):
        return cls((one,) + (0,) * (order - 1))


def generic_series(order: int = DEFAULT_ORDER) -> NormalizedSeries:
    """z + a_2 z^2 + ... + a_N z^N with every a_k a free symbol."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return NormalizedSeries((MPoly.const(1),) + tuple(MPoly.var(k) for k in range(2, order + 1)))


def _check_orders(u, v):
    if u.order != v.order:
        raise OrderMismatchError(f"orders differ: {u.order} vs {v.order}")


def _cauchy(a, b, order):
    out = []
    for n in range(order + 1):
        acc = 0
        for k in range(max(0, n - len(b) + 1), min(n, len(a) - 1) + 1):
            x, y = a[k], b[n - k]
            if _is_zero(x) or _is_zero(y):
                continue
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def series_mul(u: Series, v: Series) -> Series:
    """Cauchy product truncated to the common order."""
    _check_orders(u, v)
    coeffs = _cauchy(u.coeffs, v.coeffs, u.order)
    if isinstance(u, UnitSeries) and isinstance(v, UnitSeries):
        return UnitSeries(coeffs)
    return Series(coeffs)


def series_log(u: Series) -> Series:
    """Formal logarithm of a unit series; the result has constant term 0.

    Uses n*L_n = n*u_n - sum_{k=1}^{n-1} k*L_k*u_{n-k}.
    """
    if not _is_one(u.coeffs[0]):
        raise NonUnitError("log needs constant term 1")
    c = u.coeffs
    logs = [0]
    for n in range(1, u.order + 1):
        acc = c[n] * n
        for k in range(1, n):
            if _is_zero(logs[k]) or _is_zero(c[n - k]):
                continue
            acc = acc - logs[k] * c[n - k] * k
        logs.append(acc * Fraction(1, n))
    return Series(tuple(logs))


def series_exp(v: Series) -> UnitSeries:
    """Formal exponential of a series with zero constant term.

    Uses n*E_n = sum_{k=1}^{n} k*v_k*E_{n-k}.
    """
    if not _is_zero(v.coeffs[0]):
        raise NonUnitError("exp needs constant term 0")
    c = v.coeffs
    one = 1
    if c and isinstance(c[0], MPoly):
        one = MPoly.const(1)
    out = [one]
    for n in range(1, v.order + 1):
        acc = 0
        for k in range(1, n + 1):
            if _is_zero(c[k]) or _is_zero(out[n - k]):
                continue
            acc = acc + c[k] * out[n - k] * k
        out.append(acc * Fraction(1, n))
    return UnitSeries(tuple(out))


def series_pow(u: Series, r) -> UnitSeries:
    """u**r = exp(r log u) for a unit series and any rational exponent."""
    if not _is_one(u.coeffs[0]):
        raise NonUnitError("power needs constant term 1")
    r = Fraction(r) if not isinstance(r, (float, complex)) else r
    return series_exp(series_log(u).scale(r))


def series_derivative(f) -> Series:
    """Coefficients of f' for z^0 .. z^{N-1}.

    Accepts a ``NormalizedSeries`` (z^1 .. z^N) or a plain ``Series``.
    """
    if isinstance(f, NormalizedSeries):
        f = f.as_series()
    c = f.coeffs
    if len(c) == 1:
        return Series((0,))
    return Series(tuple(c[n] * n for n in range(1, len(c))))


def z_times_second_derivative(f: NormalizedSeries) -> Series:
    """z*f''(z) for z^0 .. z^{N-1}: the z^{n-1} coefficient is n(n-1)a_n."""
    return Series((0,) + tuple(f.coeff(n) * (n * (n - 1)) for n in range(2, f.order + 1)))


def _powers(f: NormalizedSeries, upto: int):
    """f^1 .. f^upto as coefficient tuples over z^0 .. z^N."""
    base = f.as_series().coeffs
    pw = [None, base]
    for _ in range(2, upto + 1):
        pw.append(_cauchy(pw[-1], base, f.order))
    return pw


def series_compose(outer: NormalizedSeries, inner: NormalizedSeries) -> NormalizedSeries:
    """outer(inner(z)) truncated at the common order."""
    if outer.order != inner.order:
        raise OrderMismatchError(f"orders differ: {outer.order} vs {inner.order}")
    n_ord = outer.order
    pw = _powers(inner, n_ord)
    out = [0] * (n_ord + 1)
    for k in range(1, n_ord + 1):
        b = outer.coeff(k)
        if _is_zero(b):
            continue
        for n in range(k, n_ord + 1):
            x = pw[k][n]
            if not _is_zero(x):
                out[n] = out[n] + b * x
    return NormalizedSeries(tuple(out[1:]))


def series_revert(f: NormalizedSeries) -> NormalizedSeries:
    """Compositional inverse g with g(f(z)) = z through the truncation order.

    Solved one coefficient at a time: the z^n coefficient of g(f(z)) is
    b_n + sum_{k<n} b_k [z^n] f^k, and must vanish for n >= 2.
    """
    n_ord = f.order
    pw = _powers(f, n_ord)
    b = [0, f.coeffs[0]]
    for n in range(2, n_ord + 1):
        acc = 0
        for k in range(1, n):
            x = pw[k][n]
            if _is_zero(b[k]) or _is_zero(x):
                continue
            acc = acc + b[k] * x
        b.append(-acc)
    return NormalizedSeries(tuple(b[1:]))


def series_to_dict(f) -> dict:
    """Series JSON: ``{"order": N, "coeffs": [poly JSON, ...]}``.

    For a normalized series the coefficients run over z^1 .. z^N, for a
    unit series over z^0 .. z^N.
    """
    from .algebra import as_mpoly

    return {"order": f.order, "coeffs": [as_mpoly(c).to_dict() for c in f.coeffs]}


def series_from_dict(data) -> NormalizedSeries:
    """Parse a normalized series from the JSON format.

    Coefficient entries may be polynomial objects, exact rationals
    (``"num/den"`` or integers), or floats / ``[re, im]`` pairs. Any
    floating entry switches the whole series to complex arithmetic.
    """
    from .algebra import parse_rational

    try:
        order = data["order"]
        raw = data["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed series JSON: {exc}") from exc
    if not isinstance(order, int) or order < 1 or len(raw) != order:
        raise ValueError("series JSON: 'order' must equal the number of coefficients")
    numeric = any(isinstance(c, float) or isinstance(c, list) for c in raw)
    coeffs = []
    for c in raw:
        if isinstance(c, dict):
            if numeric:
                raise ValueError("cannot mix polynomial and floating coefficients")
            coeffs.append(MPoly.from_dict(c))
        elif numeric:
            if isinstance(c, list):
                if len(c) != 2:
                    raise ValueError("complex coefficients must be [re, im]")
                coeffs.append(complex(float(c[0]), float(c[1])))
            elif isinstance(c, str):
                coeffs.append(complex(float(parse_rational(c))))
            else:
                coeffs.append(complex(c))
        else:
            coeffs.append(MPoly.const(parse_rational(c)))
    return NormalizedSeries(tuple(coeffs))
