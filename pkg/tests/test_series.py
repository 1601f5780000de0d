import cmath
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bifaber.algebra import MPoly
from bifaber.faber import faber_K
from bifaber.series import (
    NonUnitError,
    NormalizedSeries,
    OrderMismatchError,
    Series,
    UnitSeries,
    generic_series,
    series_compose,
    series_derivative,
    series_exp,
    series_from_dict,
    series_log,
    series_mul,
    series_pow,
    series_revert,
    series_to_dict,
    z_times_second_derivative,
)
from conftest import small_fractions

a2, a3, a4 = MPoly.var(2), MPoly.var(3), MPoly.var(4)
F = Fraction


def unit(*c):
    return UnitSeries(c)


def test_mul_examples():
    assert series_mul(unit(1, a2, 0), unit(1, -a2, 0)).coeffs == (1, 0, -a2**2)
    assert series_mul(unit(1, 1, 0), unit(1, 1, 0)).coeffs == (1, 2, 1)
    fz = NormalizedSeries((1, a2, a3)).over_z()
    sq = series_mul(fz, fz)
    assert sq.coeffs == (1, 2 * a2, a2**2 + 2 * a3)
    assert sq[2] == faber_K(2, 2)


def test_mul_requires_equal_orders():
    with pytest.raises(OrderMismatchError):
        series_mul(unit(1, 1), unit(1, 1, 1))


def test_log_examples():
    assert series_log(unit(1, 1, 0, 0)).coeffs == (0, 1, F(-1, 2), F(1, 3))
    assert series_log(unit(1, 0, 0)).coeffs == (0, 0, 0)
    assert series_log(unit(1, a2, 0)).coeffs == (0, a2, -a2**2 / 2)


def test_log_rejects_non_unit():
    with pytest.raises(NonUnitError):
        series_log(Series((2, 1)))


def test_exp_examples():
    assert series_exp(Series((0, 0))).coeffs == (1, 0)
    assert series_exp(Series((0, 1, 0, 0))).coeffs == (1, 1, F(1, 2), F(1, 6))
    assert series_exp(Series((0, a2, 0))).coeffs == (1, a2, a2**2 / 2)


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        series_exp(Series((1, 1)))


def test_pow_examples():
    assert series_pow(unit(1, a2, 0), 2).coeffs == (1, 2 * a2, a2**2)
    assert series_pow(NormalizedSeries((1, a2)).over_z(), -2).coeffs == (1, -2 * a2)


@pytest.mark.parametrize("r", [F(1, 2), F(-3, 2), F(2, 3), F(-4)])
def test_pow_matches_binomial_oracle(r):
    # generalized binomial coefficients computed independently
    def gbinom(k):
        out = F(1)
        for i in range(k):
            out *= (r - i) / (i + 1)
        return out

    got = series_pow(unit(1, 1, 0, 0, 0, 0), r)
    assert list(got.coeffs) == [gbinom(k) for k in range(6)]
    if r == F(1, 2):
        assert got.coeffs[:3] == (1, F(1, 2), F(-1, 8))


def test_derivative_examples():
    assert series_derivative(NormalizedSeries((1, a2))).coeffs == (1, 2 * a2)
    assert series_derivative(NormalizedSeries((1,))).coeffs == (1,)
    assert z_times_second_derivative(NormalizedSeries((1, a2, a3))).coeffs == (0, 2 * a2, 6 * a3)


def test_revert_examples():
    g = series_revert(NormalizedSeries((1, a2, 0, 0)))
    assert g.coeffs[1:] == (-a2, 2 * a2**2, -5 * a2**3)
    assert series_revert(NormalizedSeries.identity(5)).coeffs == (1, 0, 0, 0, 0)
    full = series_revert(generic_series(4))
    assert full.coeff(3) == 2 * a2**2 - a3
    assert full.coeff(4) == -(5 * a2**3 - 5 * a2 * a3 + a4)


def test_compose_examples():
    f = NormalizedSeries((1, 1, 0))
    assert series_compose(f, f).coeffs == (1, 2, 2)
    g = generic_series(5)
    assert series_compose(NormalizedSeries.identity(5), g) == g
    assert series_compose(series_revert(g), g) == NormalizedSeries.identity(5)


def test_compose_order_mismatch():
    with pytest.raises(OrderMismatchError):
        series_compose(NormalizedSeries((1, 1)), NormalizedSeries((1, 1, 1)))


def test_normalized_requires_unit_leading():
    with pytest.raises(NonUnitError):
        NormalizedSeries((2, 1))


def test_truncate_cannot_extend():
    with pytest.raises(OrderMismatchError):
        generic_series(3).truncate(4)
    assert generic_series(5).truncate(3) == generic_series(3)


def test_json_round_trip_symbolic():
    g = generic_series(4)
    assert series_from_dict(series_to_dict(g)) == g


def test_json_numeric_and_rational_entries():
    s = series_from_dict({"order": 3, "coeffs": [1.0, [0.5, -1.0], "1/4"]})
    assert s.coeffs == (1, complex(0.5, -1), 0.25)
    r = series_from_dict({"order": 2, "coeffs": ["1", "3/4"]})
    assert r.coeff(2) == F(3, 4)
    with pytest.raises(ValueError):
        series_from_dict({"order": 3, "coeffs": ["1"]})


def test_generic_revert_involution_order_10():
    g = generic_series(10)
    assert series_revert(series_revert(g)) == g


def test_generic_exp_log_order_10():
    u = generic_series(10).over_z()
    assert series_exp(series_log(u)) == u


rational_series = st.lists(small_fractions, min_size=1, max_size=9).map(
    lambda xs: NormalizedSeries((F(1),) + tuple(xs)))


@given(rational_series)
def test_revert_is_involution(f):
    assert series_revert(series_revert(f)) == f


@given(rational_series)
def test_revert_is_two_sided_inverse(f):
    g = series_revert(f)
    ident = NormalizedSeries.identity(f.order, F(1))
    assert series_compose(g, f) == ident
    assert series_compose(f, g) == ident


@given(rational_series, small_fractions, small_fractions)
def test_pow_is_additive_in_exponent(f, r, s):
    u = f.over_z()
    assert series_mul(series_pow(u, r), series_pow(u, s)) == series_pow(u, r + s)


@given(rational_series)
def test_exp_inverts_log(f):
    u = f.over_z()
    assert series_exp(series_log(u)) == u


@settings(max_examples=25)
@given(st.integers(2, 6), st.integers(-3, 3).filter(lambda c: c != 0))
def test_revert_is_weighted_homogeneous(n, scale):
    # scaling a_k -> c^(k-1) a_k scales the n-th inverse coefficient by c^(n-1)
    g = series_revert(generic_series(n))
    env = {k: F(k * k - 3, k + 1) for k in range(2, n + 1)}
    scaled = {k: v * F(scale) ** (k - 1) for k, v in env.items()}
    assert g.coeff(n).evaluate(scaled) == F(scale) ** (n - 1) * g.coeff(n).evaluate(env)


def test_complex_round_trip_small_coefficients():
    import random

    rng = random.Random(3)
    for _ in range(20):
        cs = [1] + [cmath.rect(rng.random() * 4.0 ** -(k - 1), rng.uniform(0, 6.3)) for k in range(2, 17)]
        f = NormalizedSeries(tuple(complex(c) for c in cs))
        back = series_revert(series_revert(f))
        assert max(abs(x - y) for x, y in zip(back.coeffs, f.coeffs)) <= 1e-10


def test_binomial_integer_power_oracle():
    got = series_pow(unit(1, 1, 0, 0, 0), 4)
    assert list(got.coeffs) == [comb(4, k) for k in range(5)]
