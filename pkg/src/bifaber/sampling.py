"""
Empirical audit of the coefficient bounds with Caratheodory data.

Carathéodory functions are sampled as convex combinations of Möbius
kernels (1 + x z)/(1 - x z), whose coefficients are c_n = 2 sum w_k x_k^n.
The falsifiers work on the coefficient equations behind the bounds and
are vectorized over trials with numpy. Trials are generated in fixed-size
chunks, each with its own seed substream, so results do not depend on how
chunks are scheduled across workers.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    BoundRecord,
    bound_a2,
    bound_a3,
    bound_fekete,
    bound_general_an,
    d1,
    d2,
)
from .faber import ClassParams, class_operator, inverse_coeff_A, leading_an_coefficient
from .series import MAX_ORDER, NormalizedSeries, series_revert

CHUNK = 4096
TOL_LINEAR = 1e-12
TOL_ROUNDTRIP = 1e-10


@dataclass(frozen=True)
class CaratheodorySample:
    weights: tuple
    points: tuple

    def __post_init__(self):
        if len(self.weights) != len(self.points) or not self.weights:
            raise ValueError("need matching, nonempty weights and points")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1) > 1e-12:
            raise ValueError("weights must sum to 1")
        if any(abs(x) > 1 + 1e-15 for x in self.points):
            raise ValueError("points must lie in the closed unit disk")

    def coefficients(self, order: int) -> np.ndarray:
        """c_1 .. c_order."""
        w = np.asarray(self.weights, dtype=float)
        x = np.asarray(self.points, dtype=complex)
        n = np.arange(1, order + 1)
        return 2 * (w[None, :] * x[None, :] ** n[:, None]).sum(axis=1)


def sample_caratheodory(seed: int, max_atoms: int = 4) -> CaratheodorySample:
    if max_atoms < 1:
        raise ValueError("max_atoms must be at least 1")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, max_atoms + 1))
    weights = rng.dirichlet(np.ones(k))
    on_circle = rng.random(k) < 0.5
    radius = np.where(on_circle, 1.0, np.sqrt(rng.random(k)))
    theta = rng.uniform(0, 2 * np.pi, k)
    points = radius * np.exp(1j * theta)
    weights = weights / weights.sum()
    return CaratheodorySample(tuple(float(w) for w in weights), tuple(complex(x) for x in points))


def prefix_admissible(c1, c2, tol: float = 0.0):
    """True iff (c1, c2) can start the coefficient sequence of a Carathéodory function.

    Works elementwise on numpy arrays.
    """
    c1 = np.asarray(c1)
    c2 = np.asarray(c2)
    r1 = np.abs(c1)
    ok = (r1 <= 2 + tol) & (np.abs(c2 - c1 * c1 / 2) <= 2 - r1 * r1 / 2 + tol)
    return bool(ok) if ok.ndim == 0 else ok


# -- numeric series --------------------------------------------------------

class NumericSeries(NormalizedSeries):
    """Normalized series with complex floating coefficients."""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        super().__post_init__()
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in self.coeffs):
            raise ValueError("numeric series has non-finite coefficients")

    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)


def solve_f_from_p(params: ClassParams, c, order: int) -> NumericSeries:
    """Normalized f whose class operator equals 1 + (1-alpha) sum c_n z^n.

    The z^{n-1} equation is linear in a_n with coefficient
    mu + (n-1)lam + n(n-1) xi delta, so a_n is found one step at a time.
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}]")
    c = [complex(x) for x in c]
    if len(c) < order - 1:
        raise ValueError(f"need at least {order - 1} Caratheodory coefficients")
    one_a = float(1 - params.alpha)
    coeffs = [1 + 0j]
    for n in range(2, order + 1):
        lead = float(leading_an_coefficient(n, params))
        assert lead != 0, "singular coefficient equation"
        trial = NumericSeries(tuple(coeffs) + (0j,))
        partial = class_operator(trial, params)[n - 1]
        coeffs.append((one_a * c[n - 2] - complex(partial)) / lead)
    return NumericSeries(tuple(coeffs))


def operator_residual(f: NumericSeries, params: ClassParams, c) -> float:
    """Max-norm distance between L[f] and 1 + (1-alpha) sum c_n z^n."""
    L = class_operator(f, params)
    one_a = float(1 - params.alpha)
    target = [1.0] + [one_a * complex(x) for x in list(c)[: f.order - 1]]
    return max(abs(complex(x) - t) for x, t in zip(L.coeffs, target))


@dataclass(frozen=True)
class MarginReport:
    min_margin: float
    argmin_angle: float
    radius: float
    grid: int
    order: int


def numeric_invert_and_margin(f: NumericSeries, params: ClassParams, radius: float,
                              grid: int) -> MarginReport:
    """min over |w| = radius of Re L[g](w) - alpha, for g the numeric inverse of f.

    A truncation diagnostic only: it does not certify class membership.
    """
    if not 0 < radius < 1:
        raise ValueError("radius must lie in (0, 1)")
    if grid < 1:
        raise ValueError("grid must be positive")
    g = series_revert(NumericSeries(f.coeffs))
    L = np.asarray([complex(x) for x in class_operator(g, params).coeffs])
    theta = 2 * np.pi * np.arange(grid) / grid
    w = radius * np.exp(1j * theta)
    values = np.polyval(L[::-1], w)
    margin = values.real - float(params.alpha)
    i = int(np.argmin(margin))
    return MarginReport(float(margin[i]), float(theta[i]), radius, grid, f.order)


# -- chunked trial generation ---------------------------------------------

def _rng(seed, chunk_index):
    return np.random.default_rng([seed, chunk_index])


def _disk(rng, size, radius):
    r = radius * np.sqrt(rng.random(size))
    return r * np.exp(1j * rng.uniform(0, 2 * np.pi, size))


def _run_chunks(fn, indices, workers):
    if workers <= 1:
        return [fn(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, indices))


# -- general |a_n| bound ---------------------------------------------------

@dataclass
class Theorem1Result:
    params: ClassParams
    n: int
    trials: int
    violations: int
    bound: float
    max_abs: float
    boundary_max_gap: float | None
    rows: dict = field(repr=False, default_factory=dict)


def theorem1_falsifier(params: ClassParams, n: int, trials: int, seed: int,
                       boundary: bool = True, workers: int = 1,
                       tol: float = TOL_LINEAR) -> Theorem1Result:
    """Check |a_n| against the general bound under a_2 = ... = a_{n-1} = 0.

    a_n comes from the expanded leading coefficient, not from the bound's
    denominator, and the inverse side uses the symbolic A_n restricted to
    the same hypothesis.
    """
    if n < 4:
        raise ValueError("the general bound is stated for n >= 4")
    if trials < 1:
        raise ValueError("trials must be positive")
    lead = float(leading_an_coefficient(n, params))
    inv = inverse_coeff_A(n).substitute_zero(range(2, n)).coefficient({n: 1})
    inv = float(inv)
    one_a = float(1 - params.alpha)
    bound = float(bound_general_an(n, params))

    def chunk(i):
        size = min(CHUNK, trials - i * CHUNK)
        c = _disk(_rng(seed, i), size, 2.0)
        return c

    nchunks = -(-trials // CHUNK)
    c = np.concatenate(_run_chunks(chunk, range(nchunks), workers))

    def check(c):
        an = one_a * c / lead
        d = lead * inv * an / one_a
        bad = (np.abs(an) > bound + tol) | (np.abs(d) > 2 + tol)
        return an, bad

    an, bad = check(c)
    gap = None
    if boundary:
        cb = 2 * np.exp(2j * np.pi * np.arange(16) / 16)
        anb, badb = check(cb)
        gap = float(np.max(np.abs(bound - np.abs(anb))))
        bad = np.concatenate([bad, badb])
        an = np.concatenate([an, anb])
        c = np.concatenate([c, cb])
    return Theorem1Result(params, n, trials, int(bad.sum()), bound, float(np.abs(an).max()),
                          gap, {"c": c, "an": an, "violation": bad})


# -- |a_2|, |a_3| and Fekete-Szegő -----------------------------------------

SAMPLE_COLUMNS = ["trial", "c1_re", "c1_im", "c2_re", "c2_im", "d2_re", "d2_im",
                  "a2_abs", "a2_bound", "a2_margin", "a3_abs", "a3_bound", "a3_margin",
                  "fekete_abs", "fekete_bound", "fekete_margin", "violation_flag"]


@dataclass
class Theorem2Result:
    params: ClassParams
    records: list
    proposed: int
    accepted: int
    violations: int
    rows: dict = field(repr=False)

    @property
    def max_a2(self) -> float:
        return float(self.rows["a2_abs"].max()) if self.accepted else 0.0

    def summary(self) -> str:
        return (f"trials={self.proposed} accepted={self.accepted} "
                f"violations={self.violations} max_a2={self.max_a2!r} "
                f"bound_a2={float(self.records[0].bound)!r}")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SAMPLE_COLUMNS)
        r = self.rows
        for i in range(len(r["trial"])):
            writer.writerow([
                r["trial"][i],
                repr(float(r["c1"][i].real)), repr(float(r["c1"][i].imag)),
                repr(float(r["c2"][i].real)), repr(float(r["c2"][i].imag)),
                repr(float(r["d2"][i].real)), repr(float(r["d2"][i].imag)),
                repr(float(r["a2_abs"][i])), repr(self._b[0]), repr(float(r["a2_margin"][i])),
                repr(float(r["a3_abs"][i])), repr(self._b[1]), repr(float(r["a3_margin"][i])),
                repr(float(r["fekete_abs"][i])), repr(self._b[2]),
                repr(float(r["fekete_margin"][i])),
                int(r["violation"][i]),
            ])
        return buf.getvalue()

    @property
    def _b(self):
        return [float(rec.bound) for rec in self.records]


def _theorem2_constants(params):
    one_a = float(1 - params.alpha)
    mu = float(params.mu)
    D1, D2 = float(d1(params)), float(d2(params))
    return one_a, mu, D1, D2


def theorem2_system(params: ClassParams, c1, t):
    """Solve the proof's coefficient equations for given c1 and t = c2 - d2.

    Returns (a2, a3, c2, d2); d1 = -c1 throughout.
    """
    one_a, mu, D1, D2 = _theorem2_constants(params)
    c1 = np.asarray(c1, dtype=complex)
    t = np.asarray(t, dtype=complex)
    a2 = one_a * c1 / D1
    s = D2 * (mu + 1) * a2 * a2 / one_a
    c2 = (s + t) / 2
    d2_ = (s - t) / 2
    a3 = a2 * a2 + one_a * (c2 - d2_) / (2 * D2)
    return a2, a3, c2, d2_


def _kappa(params):
    one_a, mu, D1, D2 = _theorem2_constants(params)
    return D2 * (mu + 1) * one_a / (D1 * D1)


def _theorem2_proposals(params, seed, i, size):
    rng = _rng(seed, i)
    c1 = _disk(rng, size, 2.0)
    # t only needs to range over the disk that keeps both prefixes feasible
    t = _disk(rng, size, 1.0) * (4 - np.abs(c1) ** 2)
    return c1, t


def _theorem2_boundary(params):
    kappa = _kappa(params)
    r = 2 / math.sqrt(1 + abs(kappa - 1))
    ang = np.exp(2j * np.pi * np.arange(4) / 4)
    c1 = np.concatenate([r * ang, np.zeros(4, dtype=complex)])
    t = np.concatenate([np.zeros(4, dtype=complex), 4 * ang])
    return c1, t


def theorem2_falsifier(params: ClassParams, trials: int, seed: int,
                       min_accepted: int | None = None, boundary: bool = False,
                       workers: int = 1, tol: float = TOL_LINEAR) -> Theorem2Result:
    """Stress the |a_2|, |a_3| and Fekete-Szegő estimates on the proof's equations.

    Each proposal draws c1 in |c1| <= 2 and a free difference t = c2 - d2;
    a2 is fixed by the first equation, c2 + d2 by the combined second-order
    equation, and a3 by their difference. Proposals whose (c1, c2) or
    (-c1, d2) fall outside the Carathéodory-Toeplitz body are dropped.

    ``trials`` counts proposals. With ``min_accepted``, chunks keep being
    drawn until that many proposals survive; the result is truncated to
    exactly ``min_accepted`` accepted rows.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    records = [bound_a2(params), bound_a3(params),
               BoundRecord(params, "fekete", bound_fekete(params), "single")]
    b_a2, b_a3, b_fk = (float(r.bound) for r in records)
    mu = float(params.mu)

    def evaluate(c1, t, trial_ids, adm_tol):
        a2, a3, c2, d2_ = theorem2_system(params, c1, t)
        keep = prefix_admissible(c1, c2, adm_tol) & prefix_admissible(-c1, d2_, adm_tol)
        a2, a3, c1, c2, d2_ = a2[keep], a3[keep], c1[keep], c2[keep], d2_[keep]
        fk = a3 - (mu + 3) / 2 * a2 * a2
        rows = {
            "trial": np.asarray(trial_ids, dtype=object)[keep],
            "c1": c1, "c2": c2, "d2": d2_,
            "a2_abs": np.abs(a2), "a3_abs": np.abs(a3), "fekete_abs": np.abs(fk),
        }
        rows["a2_margin"] = b_a2 - rows["a2_abs"]
        rows["a3_margin"] = b_a3 - rows["a3_abs"]
        rows["fekete_margin"] = b_fk - rows["fekete_abs"]
        rows["violation"] = ((rows["a2_margin"] < -tol) | (rows["a3_margin"] < -tol)
                             | (rows["fekete_margin"] < -tol))
        return rows

    def chunk(i):
        size = CHUNK if min_accepted is not None else min(CHUNK, trials - i * CHUNK)
        c1, t = _theorem2_proposals(params, seed, i, size)
        ids = list(range(i * CHUNK, i * CHUNK + size))
        return evaluate(c1, t, ids, 0.0), size

    parts = []
    proposed = 0
    if min_accepted is None:
        nchunks = -(-trials // CHUNK)
        for rows, size in _run_chunks(chunk, range(nchunks), workers):
            parts.append(rows)
            proposed += size
    else:
        got, nxt = 0, 0
        wave = max(1, workers)
        while got < min_accepted:
            for rows, size in _run_chunks(chunk, range(nxt, nxt + wave), workers):
                if got >= min_accepted:
                    break
                need = min_accepted - got
                if len(rows["trial"]) > need:
                    rows = {k: v[:need] for k, v in rows.items()}
                    # proposals consumed up to and including the last kept one
                    size = int(rows["trial"][-1]) % CHUNK + 1
                parts.append(rows)
                proposed += size
                got += len(rows["trial"])
            nxt += wave
    if boundary:
        c1, t = _theorem2_boundary(params)
        parts.insert(0, evaluate(c1, t, [f"b{j}" for j in range(len(c1))], TOL_LINEAR))
    rows = {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}
    accepted = len(rows["trial"])
    return Theorem2Result(params, records, proposed, accepted, int(rows["violation"].sum()), rows)
