from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from hilbkit.symfunc import SymExpr, adams_substitute, e_to_p, elementary, evaluate, parse, subsets_expansion

P = lambda *ks: SymExpr.p_word(list(ks))  # noqa: E731
roots_st = st.lists(st.integers(-4, 4), min_size=0, max_size=5)


def test_e_to_p_examples():
    assert e_to_p(SymExpr.gen("e", 1)) == P(1)
    assert e_to_p(SymExpr.gen("e", 2)) == P(1, 1) * Fraction(1, 2) - P(2) * Fraction(1, 2)
    e3 = P(1, 1, 1) * Fraction(1, 6) - P(2, 1) * Fraction(1, 2) + P(3) * Fraction(1, 3)
    assert e_to_p(SymExpr.gen("e", 3)) == e3


@given(roots_st, st.integers(0, 5))
def test_e_to_p_agrees_on_numbers(roots, k):
    e = SymExpr.gen("e", k) if k else SymExpr.one()
    direct = evaluate(e, roots, Fraction(1))
    via_p = evaluate(e_to_p(e), roots, Fraction(1))
    brute = sum((Fraction(1) * __import__("math").prod(c) for c in combinations(roots, k)), Fraction(0))
    assert direct == via_p == brute == elementary(roots, k, Fraction(1))


def test_p0_evaluates_to_number_of_variables():
    assert evaluate(P(0), [5, 7, 9], 1) == 3
    assert evaluate(P(0, 2), [1, 2], 1) == 2 * 5


def test_laurent_flag():
    with pytest.raises(ValueError):
        SymExpr({(("p", -1),): 1})
    assert SymExpr.gen("p", -2).laurent
    assert evaluate(SymExpr.gen("p", -1), [Fraction(2), Fraction(4)], Fraction(1)) == Fraction(3, 4)


def test_adams_substitute():
    assert adams_substitute(P(1, 2) - P(3), 2) == SymExpr.p_word([2, 4], True) - SymExpr.p_word([6], True)
    assert adams_substitute(P(1), -1) == SymExpr.p_word([-1])
    with pytest.raises(ValueError):
        adams_substitute(SymExpr.gen("e", 2), 2)
    with pytest.raises(ValueError):
        adams_substitute(P(1), 0)


@given(roots_st, st.integers(1, 3))
def test_adams_substitute_is_power_map(roots, m):
    expr = e_to_p(SymExpr.gen("e", 2)) + P(1) * 3
    lhs = evaluate(adams_substitute(expr, m), roots, Fraction(1))
    rhs = evaluate(expr, [r ** m for r in roots], Fraction(1))
    assert lhs == rhs


def test_parse():
    assert parse("p1^2*p3 - 2*e2") == P(1, 1, 3) - SymExpr.gen("e", 2) * 2
    assert parse("(p1 + 1)/2") == P(1) * Fraction(1, 2) + Fraction(1, 2)
    assert parse("p-1").laurent
    for bad in ("", "p1 +", "x1", "(p1", "p1^p2", "p1/p2"):
        with pytest.raises(ValueError):
            parse(bad)
    assert str(parse("3*p2*p1 - p0")) == str(P(2, 1) * 3 - P(0))


def test_subsets_expansion_examples():
    # one entry a: A = {} gives p_a p_0, A = {a} gives -(a + 1) p_a
    assert subsets_expansion((), "q1") == P(0)
    assert subsets_expansion((2,), "q1") == P(2, 0) - P(2) * 3
    assert subsets_expansion((), "rho") == -P(1) * 2
    assert subsets_expansion((1,), "rho") == -P(1, 1) * 2 + P(2) * 3
    assert subsets_expansion((), "qm", 2) == -P(1) * 2
    with pytest.raises(ValueError):
        subsets_expansion((1,), "qm", 0)
    with pytest.raises(ValueError):
        subsets_expansion((-1,), "rho")


@given(st.lists(st.integers(0, 3), max_size=3), st.integers(1, 3))
def test_subsets_expansion_term_count_and_degree(lam, m):
    expr = subsets_expansion(lam, "qm", m)
    # every word has total index Σλ + m - 1
    for w in expr.terms:
        assert sum(k for _, k in w) == sum(lam) + m - 1
    # coefficient sum over all words: Σ_A (-1)^(m+1) (-m)^|A| (λ_A + m)
    total = sum((-1) ** (m + 1) * (-m) ** len(A) * (sum(A) + m)
                for r in range(len(lam) + 1) for A in combinations(lam, r))
    assert sum(expr.terms.values()) == total
