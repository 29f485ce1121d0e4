from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from hilbkit.series import PowerSeries, compose_polynomial, exp_series

coeffs_st = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


def test_exp_series_matches_sympy():
    x = sp.Symbol("x")
    ref = sp.series(sp.exp(-2 * x), x, 0, 8).removeO()
    got = exp_series(7, -2)
    assert all(got[k] == ref.coeff(x, k) for k in range(8))


def test_exp_method_of_log_like_series():
    x = PowerSeries.x(6)
    assert (x * 3).exp() == exp_series(6, 3)
    with pytest.raises(ValueError):
        exp_series(4).exp()


def test_truncation_and_indexing():
    s = PowerSeries([1, 2, 3], 1)
    assert s.coeffs == (1, 2)
    with pytest.raises(IndexError):
        s[2]
    assert (PowerSeries([1, 1], 5) ** 3)[2] == 3


@given(coeffs_st, coeffs_st)
def test_multiplication_matches_polynomial_product(a, b):
    n = 6
    prod = PowerSeries(a, n) * PowerSeries(b, n)
    x = sp.Symbol("x")
    ref = sp.expand(sum(c * x**i for i, c in enumerate(a)) * sum(c * x**i for i, c in enumerate(b)))
    assert all(prod[k] == ref.coeff(x, k) for k in range(n + 1))


@settings(max_examples=20, deadline=None)
@given(coeffs_st)
def test_compose_polynomial_with_exponential(poly):
    n = 6
    x = sp.Symbol("x")
    ref = sp.series(sum(c * sp.exp(-x) ** i for i, c in enumerate(poly)), x, 0, n + 1).removeO()
    got = compose_polynomial(poly, exp_series(n, -1))
    assert all(got[k] == Fraction(str(ref.coeff(x, k))) for k in range(n + 1))
