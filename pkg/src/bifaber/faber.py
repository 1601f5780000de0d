"""
Faber-polynomial calculus for normalized series and the class operator

    L[f] = (1 - lam) (f/z)^mu + lam f'(z) (f/z)^(mu - 1) + xi delta z f''(z),
    xi = (2 lam + mu) / (2 lam + 1).

K_n^p is the z^n coefficient of (f(z)/z)^p, extracted from the exp/log
power of the generic series. The partition-sum form is kept separately so
the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import Monomial, MPoly
from .series import (
    DEFAULT_ORDER,
    NormalizedSeries,
    UnitSeries,
    generic_series,
    series_derivative,
    series_mul,
    series_pow,
    z_times_second_derivative,
)


class InvalidParamsError(ValueError):
    pass


@dataclass(frozen=True)
class ClassParams:
    lam: Fraction
    mu: Fraction
    delta: Fraction
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("lam", "mu", "delta", "alpha"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise InvalidParamsError(f"{name} must be an exact rational, got float {value}")
            object.__setattr__(self, name, Fraction(value))
        if self.lam < 1:
            raise InvalidParamsError(f"lambda must be >= 1, got {self.lam}")
        if self.mu < 0:
            raise InvalidParamsError(f"mu must be >= 0, got {self.mu}")
        if self.delta < 0:
            raise InvalidParamsError(f"delta must be >= 0, got {self.delta}")
        if not 0 <= self.alpha < 1:
            raise InvalidParamsError(f"alpha must lie in [0, 1), got {self.alpha}")

    @property
    def xi(self) -> Fraction:
        return xi(self)

    def replace(self, **changes) -> ClassParams:
        data = {"lam": self.lam, "mu": self.mu, "delta": self.delta, "alpha": self.alpha}
        data.update(changes)
        return ClassParams(**data)

    def as_strings(self) -> dict:
        return {"lambda": str(self.lam), "mu": str(self.mu), "delta": str(self.delta),
                "alpha": str(self.alpha)}


def xi(params: ClassParams) -> Fraction:
    return (2 * params.lam + params.mu) / (2 * params.lam + 1)


# -- partition polynomials -------------------------------------------------

def partitions(n: int, m: int):
    """Multiplicity vectors (i_1, ..., i_n) with sum i_j = m and sum j*i_j = n."""

    def rec(j, remaining_parts, remaining_sum):
        # choose multiplicities for part sizes j, j-1, ..., 1
        if j == 1:
            if remaining_parts == remaining_sum:
                yield (remaining_parts,)
            return
        for i in range(min(remaining_parts, remaining_sum // j), -1, -1):
            for rest in rec(j - 1, remaining_parts - i, remaining_sum - i * j):
                yield rest + (i,)

    if n < 1 or m < 0:
        return
    yield from rec(n, m, n)


def _multinomial(m, mult):
    out = factorial(m)
    for i in mult:
        out //= factorial(i)
    return out


def _partition_poly(n, m, index_of):
    terms = {}
    for mult in partitions(n, m):
        mono = Monomial([(index_of(j), i) for j, i in enumerate(mult, start=1)
                         if i and index_of(j) is not None])
        terms[mono] = terms.get(mono, 0) + _multinomial(m, mult)
    return MPoly(terms)


@lru_cache(maxsize=None)
def bell_D(n: int, m: int) -> MPoly:
    """D_n^m(a_1, ..., a_n) with a_1 = 1.

    Equals the z^n coefficient of (z + a_2 z^2 + a_3 z^3 + ...)^m.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    return _partition_poly(n, m, lambda j: None if j == 1 else j)


@lru_cache(maxsize=None)
def bell_D_shifted(n: int, m: int) -> MPoly:
    """D_n^m evaluated at (a_2, a_3, ...): slot j carries a_{j+1}."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    return _partition_poly(n, m, lambda j: j + 1)


def _binom(p: int, m: int) -> Fraction:
    # p!/((p-m)! m!) as a falling factorial; zero when 0 <= p < m
    out = Fraction(1)
    for i in range(m):
        out *= Fraction(p - i, i + 1)
    return out


def faber_K_partition(n: int, p: int) -> MPoly:
    """K_n^p via p*a_{n+1} + C(p,2) D_n^2 + ... + C(p,n) D_n^n in shifted variables."""
    if n == 0:
        return MPoly.const(1)
    total = MPoly()
    for m in range(1, n + 1):
        c = _binom(p, m)
        if c:
            total = total + bell_D_shifted(n, m) * c
    return total


# -- coefficient extraction ------------------------------------------------

@lru_cache(maxsize=None)
def _generic_power(p, order):
    return series_pow(generic_series(order + 1).over_z(), p)


def faber_K(n: int, p: int, order: int | None = None) -> MPoly:
    """K_n^p: the z^n coefficient of (f/z)^p for the generic normalized f.

    K_n^p depends on a_2 .. a_{n+1}; ``order`` is the truncation order of
    the unit series f/z and must be at least n.
    """
    if order is None:
        order = max(n, DEFAULT_ORDER)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > order:
        raise ValueError(f"n={n} exceeds truncation order {order}")
    if n == 0:
        return MPoly.const(1)
    if p == 0:
        return MPoly()
    # the z^n coefficient does not depend on anything beyond order n
    c = _generic_power(Fraction(p), n)[n]
    return c if isinstance(c, MPoly) else MPoly.const(c)


def inverse_coeff_A(n: int) -> MPoly:
    """A_n = K_{n-1}^{-n} / n, the z^n coefficient of the inverse map."""
    if n < 2:
        raise ValueError("A_n is defined for n >= 2")
    return faber_K(n - 1, -n) / n


# -- class operator --------------------------------------------------------

def class_operator(f: NormalizedSeries, params: ClassParams) -> UnitSeries:
    """(1-lam)(f/z)^mu + lam f'(f/z)^(mu-1) + xi delta z f'' to order N-1."""
    u = f.over_z()
    lam, mu = params.lam, params.mu
    xd = params.xi * params.delta
    fp = series_derivative(f)
    lead = series_mul(fp, series_pow(u, mu - 1))
    total = lead.scale(lam)
    if lam != 1:
        total = total + series_pow(u, mu).scale(1 - lam)
    if xd:
        total = total + z_times_second_derivative(f).scale(xd)
    return UnitSeries(total.coeffs)


@lru_cache(maxsize=256)
def _generic_operator(params, order):
    return class_operator(generic_series(order), params)


def F_coefficient(n: int, params: ClassParams) -> MPoly:
    """F_{n-1}(a_2, ..., a_n): the z^{n-1} coefficient of L[f] for generic f."""
    if n < 2:
        raise ValueError("F_{n-1} is defined for n >= 2")
    c = _generic_operator(params.replace(alpha=0), n)[n - 1]
    return c if isinstance(c, MPoly) else MPoly.const(c)


def leading_an_coefficient(n: int, params: ClassParams) -> Fraction:
    """Coefficient of a_n in F_{n-1} once a_2 .. a_{n-1} are set to zero."""
    reduced = F_coefficient(n, params).substitute_zero(range(2, n))
    return reduced.coefficient({n: 1})
