"""
Exact coefficient bounds for the class B_Sigma^mu(alpha, lambda, delta).

Bounds are either rational or square roots of rationals; both are kept
exact in ``BoundValue`` and compared by squaring. Shorthand used below:

    D1 = mu + lam + 2 xi delta       (coefficient of a_2 in F_1)
    D2 = mu + 2 lam + 6 xi delta     (coefficient of a_3 in F_2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .algebra import format_rational
from .faber import ClassParams

RATIONAL = "rational"
SQRT = "sqrt"


@total_ordering
@dataclass(frozen=True)
class BoundValue:
    kind: str
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.kind not in (RATIONAL, SQRT):
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if self.kind == SQRT and self.value < 0:
            raise ValueError("negative radicand")

    @classmethod
    def rational(cls, q):
        return cls(RATIONAL, q)

    @classmethod
    def sqrt(cls, radicand):
        return cls(SQRT, radicand)

    def _signed_square(self):
        # (sign, square) for exact comparison
        if self.kind == SQRT:
            return 1, self.value
        return (1 if self.value >= 0 else -1), self.value * self.value

    def _key(self):
        sign, sq = self._signed_square()
        return (sign, sq if sign > 0 else -sq)

    def __eq__(self, other):
        if not isinstance(other, BoundValue):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, BoundValue):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __float__(self):
        if self.kind == SQRT:
            return math.sqrt(self.value)
        return float(self.value)

    def __str__(self):
        text = format_rational(self.value)
        return f"sqrt:{text}" if self.kind == SQRT else text


@dataclass(frozen=True)
class BoundRecord:
    params: ClassParams
    target: str
    bound: BoundValue
    branch: str
    n: int | None = None
    extras: dict = field(default_factory=dict, compare=False)

    def row(self) -> dict:
        p = self.params
        return {
            "lambda": format_rational(p.lam),
            "mu": format_rational(p.mu),
            "delta": format_rational(p.delta),
            "alpha": format_rational(p.alpha),
            "xi": format_rational(p.xi),
            "target": self.target if self.n is None else f"{self.target}{self.n}",
            "branch": self.branch,
            "bound_kind": self.bound.kind,
            "bound_value": str(self.bound),
        }


CSV_COLUMNS = ["lambda", "mu", "delta", "alpha", "xi", "target", "branch",
               "bound_kind", "bound_value"]


def d1(params: ClassParams) -> Fraction:
    return params.mu + params.lam + 2 * params.xi * params.delta


def d2(params: ClassParams) -> Fraction:
    return params.mu + 2 * params.lam + 6 * params.xi * params.delta


def general_denominator(n: int, params: ClassParams) -> Fraction:
    return params.mu + (n - 1) * params.lam + n * (n - 1) * params.xi * params.delta


def bound_general_an(n: int, params: ClassParams, unchecked: bool = False) -> BoundValue:
    """2(1-alpha)/(mu + (n-1)lam + n(n-1) xi delta), valid when a_2..a_{n-1} vanish.

    The estimate is only claimed for n >= 4; pass ``unchecked=True`` to
    evaluate the same expression at n = 2 or 3.
    """
    if n < 4 and not unchecked:
        raise ValueError(f"the general bound is stated for n >= 4, got n={n}")
    if n < 2:
        raise ValueError("n must be at least 2")
    return BoundValue.rational(2 * (1 - params.alpha) / general_denominator(n, params))


def alpha_threshold(params: ClassParams) -> Fraction:
    mu, lam = params.mu, params.lam
    return (mu + 2 * lam - lam * lam) / (d2(params) * (mu + 1))


def a2_sqrt_branch(params: ClassParams) -> BoundValue:
    return BoundValue.sqrt(4 * (1 - params.alpha) / (d2(params) * (params.mu + 1)))


def a2_rational_branch(params: ClassParams) -> BoundValue:
    return BoundValue.rational(2 * (1 - params.alpha) / d1(params))


def bound_a2(params: ClassParams) -> BoundRecord:
    """Piecewise |a_2| estimate; at the threshold both branches are recorded."""
    t = alpha_threshold(params)
    sq, rat = a2_sqrt_branch(params), a2_rational_branch(params)
    extras = {"threshold": t, "sqrt_branch": sq, "rational_branch": rat}
    if params.alpha == t:
        extras["branches_equal"] = sq == rat
        extras["ordering"] = "equal" if sq == rat else ("sqrt<rational" if sq < rat else "sqrt>rational")
    if params.alpha <= t:
        return BoundRecord(params, "a2", sq, "sqrt", extras=extras)
    return BoundRecord(params, "a2", rat, "rational", extras=extras)


def a3_e27(params: ClassParams) -> Fraction:
    one_a = 1 - params.alpha
    return 4 * one_a**2 / d1(params) ** 2 + 2 * one_a / d2(params)


def a3_e28(params: ClassParams) -> Fraction:
    mu = params.mu
    return (1 - params.alpha) * ((mu + 3) + abs(1 - mu)) / (d2(params) * (mu + 1))


def a3_display(params: ClassParams) -> Fraction:
    """The |a_3| estimate exactly as printed in the theorem statement."""
    mu, lam = params.mu, params.lam
    one_a = 1 - params.alpha
    xd = params.xi * params.delta
    if mu < 1:
        return min(a3_e27(params), 4 * one_a / (d2(params) * (mu + 1)))
    return 2 * one_a / (mu + 2 * lam + 2 * xd)


def bound_a3(params: ClassParams) -> BoundRecord:
    """min(E27, E28) from the proof, with the printed piecewise value alongside."""
    e27, e28 = a3_e27(params), a3_e28(params)
    truth = min(e27, e28)
    shown = a3_display(params)
    extras = {"e27": e27, "e28": e28, "display": shown, "display_matches": shown == truth}
    branch = "e28" if e28 <= e27 else "e27"
    return BoundRecord(params, "a3", BoundValue.rational(truth), branch, extras=extras)


def bound_fekete(params: ClassParams) -> BoundValue:
    """Bound on |a_3 - (mu+3)/2 a_2^2|."""
    return BoundValue.rational(2 * (1 - params.alpha) / d2(params))


def bound_record(target: str, params: ClassParams, n: int | None = None,
                 unchecked: bool = False) -> BoundRecord:
    if target == "a2":
        return bound_a2(params)
    if target == "a3":
        return bound_a3(params)
    if target == "fekete":
        return BoundRecord(params, "fekete", bound_fekete(params), "single")
    if target == "an":
        if n is None:
            raise ValueError("target 'an' needs n")
        return BoundRecord(params, "a", bound_general_an(n, params, unchecked), "single", n=n)
    raise ValueError(f"unknown target {target!r}")


SPECIALIZATIONS = {
    "caglar": {"delta": 0},
    "frasin-aouf": {"delta": 0, "mu": 1},
    "srivastava": {"delta": 0, "mu": 1, "lam": 1},
    "bi-starlike": {"delta": 0, "mu": 0, "lam": 1},
    "mu1-family": {"mu": 1},
}


def specialize(params: ClassParams, target: str) -> ClassParams:
    """Apply the parameter substitutions that recover the earlier subclasses."""
    try:
        changes = SPECIALIZATIONS[target]
    except KeyError:
        raise ValueError(f"unknown specialization {target!r}; "
                         f"choose from {', '.join(SPECIALIZATIONS)}") from None
    return params.replace(**changes)
