import random
from fractions import Fraction
from math import factorial

import pytest

from src.exact_arith import DensePoly
from src.series import TruncatedSeries, series_binomial_pow, series_exp, series_polyval

S = DensePoly.variable()


def test_exp_coefficients():
    e = series_exp(TruncatedSeries.monomial(1, 1, 8))
    for j in range(9):
        assert e.coefficient(j) == Fraction(1, factorial(j))


def test_exp_of_negative_is_inverse():
    t = TruncatedSeries.monomial(1, 1, 10)
    assert series_exp(t) * series_exp(-t) == TruncatedSeries.one(10)


def test_binomial_power_rational_exponent():
    t = TruncatedSeries.monomial(1, 1, 5)
    inv = series_binomial_pow(t, -1, 5)
    assert [inv.coefficient(j) for j in range(6)] == [DensePoly([(-1) ** j]) for j in range(6)]
    root = series_binomial_pow(t, Fraction(1, 2), 5)
    assert root * root == TruncatedSeries([1, 1], 5)


def test_binomial_power_polynomial_exponent():
    t = TruncatedSeries.monomial(1, 1, 4)
    power = series_binomial_pow(t, S, 4)
    assert power.coefficient(2) == S * (S - 1) / 2
    assert power.coefficient(1) == S


def test_binomial_power_needs_zero_constant():
    with pytest.raises(ValueError):
        series_binomial_pow(TruncatedSeries([1, 1], 3), 2, 3)


def test_truncation_and_bounds():
    t = TruncatedSeries.monomial(1, 1, 3)
    product = (1 + t) * (1 - t)
    assert product == TruncatedSeries([1, 0, -1], 3)
    with pytest.raises(IndexError):
        product.coefficient(4)
    assert (t ** 4).is_zero()


def test_polyval_on_series():
    t = TruncatedSeries.monomial(1, 1, 4)
    value = series_polyval(DensePoly([1, 1, 1]), t + 1)
    assert value == TruncatedSeries([3, 3, 1], 4)


def _random_rational(rng, bound=9):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_tail(rng, order):
    return TruncatedSeries([0] + [_random_rational(rng) for _ in range(order)], order)


@pytest.mark.parametrize("seed", range(12))
def test_binomial_power_times_its_inverse(seed):
    rng = random.Random(seed)
    order = rng.randint(2, 7)
    u = _random_tail(rng, order)
    r = _random_rational(rng)
    product = series_binomial_pow(u, r, order) * series_binomial_pow(u, -r, order)
    assert product == TruncatedSeries.one(order)


@pytest.mark.parametrize("seed", range(8))
def test_binomial_power_adds_exponents(seed):
    rng = random.Random(1000 + seed)
    order = rng.randint(2, 6)
    u = _random_tail(rng, order)
    a, b = _random_rational(rng), _random_rational(rng)
    lhs = series_binomial_pow(u, a, order) * series_binomial_pow(u, b, order)
    assert lhs == series_binomial_pow(u, a + b, order)
