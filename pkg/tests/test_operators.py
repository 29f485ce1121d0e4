from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from hilbkit import operators
from hilbkit.laurent import ONE, Q, T, LaurentPoly, RatFunc
from hilbkit.localization import EquivClass, kirwan_H, kirwan_K
from hilbkit.operators import (A_poly, A_poly_alternative, BasisError, SoundnessError, a_coeffs_closed, adams_class,
                               adams_line_identity, basis_coefficients, bott_theta, derive_a_coeffs, expand_in_basis,
                               nakajima_basis, nonequiv_reduce, q1_H, q_partition, qK_1m, qm_H, rho)
from hilbkit.partitions import Partition, enumerate_partitions
from hilbkit.symfunc import parse
from oracles import closed_a_coeffs, x

VAC = EquivClass.unit("H", 0)


def test_q1_on_vacuum_and_first_level():
    assert q1_H(VAC) == EquivClass.unit("H", 1)
    assert nonequiv_reduce(q1_H(EquivClass.unit("H", 1))) == (0, 1)
    assert nonequiv_reduce(q1_H(kirwan_H(parse("p1"), 1))) == (0, 0)


def test_rho_examples():
    # ρ(1) on Hilb^1 is q_2(1), whose Kirwan form is -2 p_1
    r = rho(EquivClass.unit("H", 1))
    assert nonequiv_reduce(r) == (1, 0)
    assert nonequiv_reduce(kirwan_H(parse("-2*p1"), 2)) == (1, 0)
    assert nonequiv_reduce(kirwan_H(parse("e1"), 2)) == (Fraction(-1, 2), 0)


def test_operator_argument_checks():
    with pytest.raises(ValueError):
        qm_H(0, VAC)
    with pytest.raises(ValueError):
        q1_H(EquivClass.unit("K", 1))
    with pytest.raises(ValueError):
        qK_1m(1, EquivClass.unit("H", 1))
    with pytest.raises(ValueError):
        adams_class(2, EquivClass.unit("H", 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_nakajima_classes_are_homogeneous_of_expected_degree(n):
    basis = nakajima_basis(n)
    assert basis.partitions == enumerate_partitions(n)
    assert basis.determinant() != 0
    for lam in basis.partitions:
        degs = set().union(*(v.total_degrees() for v in basis.classes[lam].restrictions.values()))
        assert degs <= {n - len(lam)}


def test_creation_operators_commute_equivariantly():
    one = EquivClass.unit("H", 1)
    assert qm_H(2, qm_H(1, one)) == qm_H(1, qm_H(2, one))
    assert q_partition((2, 1), VAC) == q_partition((1, 2), VAC)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.fractions(-5, 5, max_denominator=4), min_size=len(enumerate_partitions(n)),
                       max_size=len(enumerate_partitions(n)))))
def test_reduce_inverts_expand(vector):
    n = {1: 1, 2: 2, 3: 3, 5: 4, 7: 5}[len(vector)]
    assert nonequiv_reduce(expand_in_basis(n, vector)) == tuple(vector)


def test_reduce_is_idempotent_and_linear():
    cl = kirwan_H(parse("p1^2 + 3*p2"), 3)
    v = nonequiv_reduce(cl)
    assert nonequiv_reduce(expand_in_basis(3, v)) == v
    assert nonequiv_reduce(cl * 2) == tuple(2 * a for a in v)


def test_equivariant_coefficients_rebuild_class():
    cl = kirwan_H(parse("p1*p2 - e3"), 3)
    coeffs = basis_coefficients(cl)
    basis = nakajima_basis(3)
    rebuilt = EquivClass("H", "T", 3, {mu: LaurentPoly() for mu in basis.partitions})
    for lam, c in coeffs.items():
        rebuilt = rebuilt + basis.classes[lam] * c
    assert rebuilt == cl


def test_non_genuine_class_is_rejected():
    # restriction 1 at (2) and 0 at (1,1) is not a polynomial combination of q_λ(1)
    bogus = EquivClass("H", "T", 2, {Partition((2,)): ONE, Partition((1, 1)): LaurentPoly()})
    with pytest.raises(SoundnessError):
        nonequiv_reduce(bogus)
    with pytest.raises(SoundnessError):
        nonequiv_reduce(EquivClass.build("H", "T", 2, lambda lam: Q ** -1))


def test_singular_basis_is_reported(monkeypatch):
    monkeypatch.setattr(operators.BasisMatrix, "determinant", lambda self: 0)
    monkeypatch.setattr(operators, "_basis_cache", {})
    with pytest.raises(BasisError):
        nakajima_basis(2)


@pytest.mark.parametrize("m", range(0, 8))
def test_series_route_matches_closed_form(m):
    ref = [Fraction(int(c.p), int(c.q)) for c in closed_a_coeffs(m)]
    assert a_coeffs_closed(m) == ref
    assert derive_a_coeffs(m) == ref


@pytest.mark.parametrize("m", range(1, 6))
def test_alternative_A_formula_is_detected_as_wrong(m):
    assert derive_a_coeffs(m, A_poly_alternative) != a_coeffs_closed(m)


@pytest.mark.parametrize("m", range(0, 7))
def test_A_poly_generating_identity(m):
    # Σ_s A_{s,m}(x) y^s = Σ_j C(m,j) (-1)^(m-j) [g_j(x) y^j - x g_{j-1}(x) y^(j-1)], g_j = (1-x^j)/(1-x)
    y = sp.Symbol("y")
    lhs = sum(sum(c * x**k for k, c in enumerate(A_poly(s, m))) * y**s for s in range(-1, m + 1))
    g = lambda j: (1 - x**j) / (1 - x)  # noqa: E731
    rhs = sum(sp.binomial(m, j) * (-1) ** (m - j) * (g(j) * y**j - x * g(j - 1) * y**(j - 1)) for j in range(m + 1))
    assert sp.simplify(lhs - rhs) == 0


def test_bott_theta():
    assert bott_theta(3, Q).to_laurent() == 1 + Q + Q ** 2
    assert bott_theta(0, T).to_laurent() == LaurentPoly()
    assert bott_theta(4, ONE) == RatFunc(LaurentPoly.const(4))
    with pytest.raises(ValueError):
        bott_theta(2, Q + T)


@pytest.mark.parametrize("m", range(1, 7))
def test_adams_line_identity(m):
    lhs, rhs = adams_line_identity(m)
    assert lhs == rhs
    lhs, rhs = adams_line_identity(m, Q * T ** 2)
    assert lhs == rhs
    # a wrong twist is caught
    assert lhs != rhs + RatFunc(T ** -1)


def test_adams_class_on_kirwan_image():
    cl = kirwan_K(parse("p1"), 2)
    assert adams_class(2, cl) == kirwan_K(parse("p2"), 2)


def test_qK_on_vacuum_and_unit():
    assert qK_1m(3, EquivClass.unit("K", 0)) == EquivClass.unit("K", 1)
    # π_*(Q) is the tautological bundle, whose Kirwan image is p_1
    assert qK_1m(1, EquivClass.unit("K", 2)) == kirwan_K(parse("p1"), 3)
