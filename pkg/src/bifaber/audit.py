"""
Symbolic consistency audit.

Each printed formula is rebuilt verbatim as a polynomial and subtracted
from the value obtained by direct expansion (series reversion, power
extraction, or the class operator). A report is a match exactly when the
difference polynomial is zero; nothing here assumes the outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MPoly
from .bounds import a3_display, a3_e27, a3_e28, general_denominator
from .faber import (
    ClassParams,
    F_coefficient,
    bell_D,
    class_operator,
    faber_K,
    faber_K_partition,
    inverse_coeff_A,
    leading_an_coefficient,
)
from .series import UnitSeries, generic_series, series_mul, series_revert

MATCH = "match"
MISMATCH = "mismatch"

a = MPoly.var


@dataclass(frozen=True)
class AuditReport:
    item: str
    status: str
    difference: MPoly
    notes: str = ""
    mandatory: bool = False
    params: dict | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {"item": self.item, "status": self.status,
               "difference": self.difference.to_dict(), "notes": self.notes,
               "mandatory": self.mandatory}
        if self.params is not None:
            out["params"] = self.params
        return out


def compare(item, truth, shown, notes="", mandatory=False, params=None) -> AuditReport:
    diff = MPoly() + truth - shown
    return AuditReport(item, MATCH if not diff else MISMATCH, diff, notes, mandatory,
                       params.as_strings() if params is not None else None)


# -- parameter-free identities ---------------------------------------------

def audit_inverse_display() -> AuditReport:
    """The printed inverse series through w^4 against series reversion."""
    g = series_revert(generic_series(4))
    shown = [-a(2), 2 * a(2) ** 2 - a(3), -(5 * a(2) ** 3 - 5 * a(2) * a(3) + a(4))]
    diff = MPoly()
    # stack the three coefficient differences into one polynomial via a marker-free sum:
    # each coefficient has its own weight, so cancellation across powers is impossible
    for n, s in zip((2, 3, 4), shown):
        diff = diff + (g.coeff(n) - s)
    return AuditReport("inverse-series:w4", MATCH if not diff else MISMATCH, diff,
                       "reversion of z + a2 z^2 + a3 z^3 + a4 z^4", mandatory=True)


def audit_inverse_faber(order: int) -> list[AuditReport]:
    g = series_revert(generic_series(order))
    return [compare(f"inverse-coeff:A{n}", inverse_coeff_A(n), g.coeff(n),
                    "K_{n-1}^{-n}/n against series reversion", mandatory=True)
            for n in range(2, order + 1)]


def audit_first_K() -> list[AuditReport]:
    shown = {
        (1, -2): -2 * a(2),
        (2, -3): 3 * (2 * a(2) ** 2 - a(3)),
        (3, -4): -4 * (5 * a(2) ** 3 - 5 * a(2) * a(3) + a(4)),
    }
    return [compare(f"faber-golden:K{n}^{p}", faber_K(n, p), s, mandatory=True)
            for (n, p), s in shown.items()]


def audit_partition_sum(max_n: int = 6, max_p: int = 5) -> list[AuditReport]:
    out = []
    for p in range(1, max_p + 1):
        for n in range(1, max_n + 1):
            out.append(compare(f"partition-sum:K{n}^{p}", faber_K(n, p), faber_K_partition(n, p),
                               "partition sum against power extraction", mandatory=True))
    return out


def _power_coefficient(n, m):
    # z^n coefficient of (z + a2 z^2 + ...)^m = z^(n-m) coefficient of (f/z)^m
    u = generic_series(n).over_z()
    acc = UnitSeries((MPoly.const(1),) + (0,) * (n - 1))
    for _ in range(m):
        acc = series_mul(acc, u)
    return MPoly() + acc[n - m]


def audit_bell(max_n: int = 8) -> list[AuditReport]:
    return [compare(f"partition-poly:D{n}^{m}", bell_D(n, m), _power_coefficient(n, m),
                    "partition enumeration against repeated multiplication", mandatory=True)
            for n in range(1, max_n + 1) for m in range(1, n + 1)]


def _falling_ratio(top: int, bottom: int) -> Fraction:
    """top!/bottom! for integers with top >= bottom, read as a product."""
    out = Fraction(1)
    for k in range(bottom + 1, top + 1):
        out *= k
    return out


def _inv_factorial(k: int) -> Fraction:
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(2, k + 1):
        out /= i
    return out


def faber_expansion_display(n: int) -> MPoly:
    """The explicit part of the printed K_{n-1}^{-n}; complete for n <= 6."""
    def c(bottom, j):
        return _falling_ratio(-n, bottom) * _inv_factorial(n - j)

    a2 = a(2)
    terms = [
        (c(-2 * n + 1, 1), a2 ** (n - 1) if n >= 1 else None),
        (c(2 * (-n + 1), 3), (a2 ** (n - 3) * a(3)) if n >= 3 else None),
        (c(-2 * n + 3, 4), (a2 ** (n - 4) * a(4)) if n >= 4 else None),
        (c(2 * (-n + 2), 5), (a2 ** (n - 5) * (a(5) + (-n + 2) * a(3) ** 2)) if n >= 5 else None),
        (c(-2 * n + 5, 6), (a2 ** (n - 6) * (a(6) + (-2 * n + 5) * a(3) * a(4))) if n >= 6 else None),
    ]
    total = MPoly()
    for coeff, mono in terms:
        if mono is not None and coeff:
            total = total + mono * coeff
    return total


def audit_faber_expansion(max_n: int = 6) -> list[AuditReport]:
    return [compare(f"faber-expansion:K{n - 1}^{-n}", faber_K(n - 1, -n), faber_expansion_display(n),
                    "explicit terms of the printed expansion (no V_j tail for n <= 6)")
            for n in range(2, max_n + 1)]


# -- parameter-dependent displays ------------------------------------------

def F1_display(params: ClassParams) -> MPoly:
    return a(2) * (params.mu + params.lam + 2 * params.xi * params.delta)


def F2_display(params: ClassParams) -> MPoly:
    mu, lam, delta, xi = params.mu, params.lam, params.delta, params.xi
    inner = a(2) ** 2 * ((mu - 1) / 2) + a(3) * (1 + 6 * delta / (2 * lam + 1))
    return inner * (mu + 2 * lam + 6 * xi * delta)


def audit_F_displays(params: ClassParams) -> list[AuditReport]:
    return [
        compare("F1", F_coefficient(2, params), F1_display(params),
                "direct expansion minus printed F1", mandatory=True, params=params),
        compare("F2", F_coefficient(3, params), F2_display(params),
                "direct expansion minus printed F2", mandatory=params.delta == 0,
                params=params),
    ]


def audit_theorem1_coefficient(n: int, params: ClassParams) -> AuditReport:
    """Leading a_n coefficient against the proof line mu + (n-1)lam.

    The notes record whether the theorem's denominator (with the
    n(n-1) xi delta term) matches instead.
    """
    lead = leading_an_coefficient(n, params)
    proof_line = params.mu + (n - 1) * params.lam
    display = general_denominator(n, params)
    notes = (f"leading={lead}; proof line={proof_line}; theorem denominator={display}; "
             f"theorem denominator matches={lead == display}")
    return compare(f"an-leading:proof-line:n={n}", MPoly.const(lead), MPoly.const(proof_line),
                   notes, mandatory=params.delta == 0, params=params)


def audit_theorem1_display(n: int, params: ClassParams) -> AuditReport:
    lead = leading_an_coefficient(n, params)
    return compare(f"an-leading:denominator:n={n}", MPoly.const(lead),
                   MPoly.const(general_denominator(n, params)), mandatory=True, params=params)


def _inverse_operator(params: ClassParams, order: int = 3):
    g = series_revert(generic_series(order))
    return class_operator(g, params)


def audit_inverse_equations(params: ClassParams) -> list[AuditReport]:
    """Operator applied to g = f^{-1} against the printed w and w^2 equations."""
    mu, lam, delta, xi = params.mu, params.lam, params.delta, params.xi
    Lg = _inverse_operator(params)
    shown_w = -(mu + lam) * a(2)
    shown_w2 = (a(2) ** 2 * ((mu + 3) / 2) - a(3) * (1 + 6 * delta / (2 * lam + 1))) \
        * (mu + 2 * lam + 6 * xi * delta)
    return [
        compare("inverse-operator:w", MPoly() + Lg[1], shown_w,
                "w coefficient of the operator on g minus printed -(mu+lam)a2",
                params=params),
        compare("inverse-operator:w2", MPoly() + Lg[2], shown_w2,
                "w^2 coefficient of the operator on g minus printed display", params=params),
    ]


def audit_a3_display(params: ClassParams) -> AuditReport:
    truth = min(a3_e27(params), a3_e28(params))
    shown = a3_display(params)
    branch = "mu>=1" if params.mu >= 1 else "mu<1"
    return compare(f"a3-display:{branch}", MPoly.const(truth), MPoly.const(shown),
                   f"min(E27,E28)={truth}; printed={shown}", params=params)


DEFAULT_GRID = {
    "lam": [Fraction(1), Fraction(3, 2), Fraction(2)],
    "mu": [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)],
    "delta": [Fraction(0), Fraction(1, 2), Fraction(1)],
}


def param_grid(lams, mus, deltas, alphas=(Fraction(0),)):
    for lam, mu, delta, alpha in itertools.product(lams, mus, deltas, alphas):
        yield ClassParams(lam, mu, delta, alpha)


def full_audit(order: int = 10, grid=None) -> list[AuditReport]:
    """Every identity and printed display the toolkit can check."""
    if grid is None:
        grid = list(param_grid(DEFAULT_GRID["lam"], DEFAULT_GRID["mu"], DEFAULT_GRID["delta"]))
    reports = [audit_inverse_display()]
    reports += audit_inverse_faber(order)
    reports += audit_first_K()
    reports += audit_partition_sum()
    reports += audit_bell()
    reports += audit_faber_expansion()
    for params in grid:
        reports += audit_F_displays(params)
        reports.append(audit_theorem1_display(4, params))
        reports.append(audit_theorem1_coefficient(4, params))
        reports += audit_inverse_equations(params)
        reports.append(audit_a3_display(params))
    return reports


def mandatory_ok(reports) -> bool:
    return all(r.status == MATCH for r in reports if r.mandatory)
