"""Faber-polynomial coefficient calculus and bound audits for bi-univalent function classes."""

from .algebra import MPoly, Monomial, parse_rational, poly_add, poly_eval, poly_mul, weighted_degree
from .bounds import (
    BoundRecord,
    BoundValue,
    alpha_threshold,
    bound_a2,
    bound_a3,
    bound_fekete,
    bound_general_an,
    specialize,
)
from .faber import (
    ClassParams,
    F_coefficient,
    bell_D,
    class_operator,
    faber_K,
    faber_K_partition,
    inverse_coeff_A,
    leading_an_coefficient,
    xi,
)
from .series import (
    NormalizedSeries,
    Series,
    UnitSeries,
    generic_series,
    series_compose,
    series_derivative,
    series_exp,
    series_log,
    series_mul,
    series_pow,
    series_revert,
)

__version__ = "0.1.0"
