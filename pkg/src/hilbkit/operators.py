"""Nakajima creation operators, their K-theoretic cousins and basis reduction."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .laurent import IntegralityError, ONE, LaurentPoly, RatFunc, T
from .localization import EquivClass
from .partitions import Partition, enumerate_partitions
from .pushforward import Q_class, c1Q_class, pullback_p, push_H, push_K
from .series import PowerSeries, compose_polynomial, exp_series


class SoundnessError(ArithmeticError):
    """Basis coordinates of an equivariant class were not polynomial."""


class BasisError(ArithmeticError):
    """The Nakajima classes failed to be linearly independent."""


# --- cohomological operators -------------------------------------------------

def q1_H(cl: EquivClass) -> EquivClass:
    """``q_1 = π_* p^*``."""
    _need_H(cl)
    return push_H(pullback_p(cl))


def rho(cl: EquivClass) -> EquivClass:
    """``ρ(E) = -π_*(c_1(Q) · p^*E)``."""
    _need_H(cl)
    return -push_H(c1Q_class(cl.n) * pullback_p(cl))


def qm_H(m: int, cl: EquivClass) -> EquivClass:
    """``q_m = (ρ q_{m-1} - q_{m-1} ρ) / (m - 1)`` for ``m >= 2``."""
    if m < 1:
        raise ValueError("creation operators need m >= 1")
    if m == 1:
        return q1_H(cl)
    return (rho(qm_H(m - 1, cl)) - qm_H(m - 1, rho(cl))) * Fraction(1, m - 1)


def q_partition(lam, cl: EquivClass) -> EquivClass:
    """``q_λ = q_{λ_l} ∘ ... ∘ q_{λ_1}`` applied to ``cl`` (``q_{λ_1}`` first)."""
    for part in lam:
        cl = qm_H(part, cl)
    return cl


def _need_H(cl):
    if cl.theory != "H" or cl.torus != "T":
        raise ValueError("cohomological operators act on T-equivariant H classes")


# --- K-theory ---------------------------------------------------------------

def qK_1m(m: int, cl: EquivClass) -> EquivClass:
    """``q^K_{1,m}(E) = π_*(p^*E ⊗ Q^m)``."""
    if cl.theory != "K":
        raise ValueError("q^K acts on K-theory classes")
    return push_K(pullback_p(cl) * Q_class(cl.n, m))


def adams_class(m: int, cl: EquivClass) -> EquivClass:
    """``ψ^m`` on restrictions: ``q -> q^m, t -> t^m``."""
    if cl.theory != "K":
        raise ValueError("Adams operations act on K-theory")
    return cl.map(lambda v: v.substitute_powers(m, m))


def bott_theta(m: int, line: LaurentPoly) -> RatFunc:
    """``θ^m(L) = (1 - L^m) / (1 - L)`` for a monomial line class ``L``."""
    if not line.is_monomial() or next(iter(line.terms.values())) != 1:
        raise ValueError("θ^m is evaluated on a character q^i t^j")
    ((i, j), _), = line.terms.items()
    if (i, j) == (0, 0):
        return RatFunc(LaurentPoly.const(m))
    return RatFunc(ONE - line ** m, {(-i, -j): 1})


def adams_line_identity(m: int, line: LaurentPoly = LaurentPoly.monomial(1, 0)) -> tuple[RatFunc, RatFunc]:
    """Both sides of ``ψ^m(L) = ψ^m(L) θ^m(u) - t^{-1} ψ^{m-1}(L) θ^{m-1}(u)``, ``u = (tL)^{-1}``.

    ``q`` plays the symbolic line bundle by default.
    """
    u = (T * line) ** -1
    lhs = RatFunc(line ** m)
    rhs = bott_theta(m, u) * line ** m - bott_theta(m - 1, u) * (line ** (m - 1) * T ** -1)
    return lhs, rhs


# --- Nakajima basis and nonequivariant reduction ------------------------------

def _to_sympy_poly(p: LaurentPoly, K, gen):
    """Dehomogenize at ``t = 1``."""
    coeffs: dict[int, Fraction] = {}
    for (a, _), c in p.terms.items():
        if a < 0:
            raise ValueError("expected a polynomial")
        coeffs[a] = coeffs.get(a, 0) + Fraction(c)
    return K.from_sympy(sum((K.to_sympy(K.convert(c)) * gen ** a for a, c in coeffs.items()), 0 * gen))


@dataclass
class BasisMatrix:
    """Restrictions of the equivariant classes ``q_λ(1)`` for ``λ ⊢ n``."""

    n: int
    partitions: tuple[Partition, ...]
    classes: dict[Partition, EquivClass]
    degrees: dict[Partition, int]
    _inverse: object = None

    def matrix(self) -> list[list[LaurentPoly]]:
        return [[self.classes[lam][mu] for mu in self.partitions] for lam in self.partitions]

    def _sympy(self):
        from sympy import QQ, Symbol
        from sympy.polys.matrices import DomainMatrix

        gen = Symbol("q")
        K = QQ[gen]
        rows = [[_to_sympy_poly(v, K, gen) for v in row] for row in self.matrix()]
        size = len(self.partitions)
        return DomainMatrix(rows, (size, size), K), K, gen

    def determinant(self):
        """Determinant of the ``t = 1`` dehomogenized matrix (nonzero iff the original is)."""
        M, K, _ = self._sympy()
        return K.to_sympy(M.det())

    def inverse(self):
        if self._inverse is None:
            M, K, gen = self._sympy()
            # rows index basis classes: cl|_μ = Σ_λ c_λ M[λ][μ]  =>  c = M^{-T} cl
            inv, den = M.transpose().inv_den()
            if K.is_zero(den):
                raise BasisError(f"Nakajima classes are dependent for n={self.n}")
            self._inverse = (inv, den, K, gen)
        return self._inverse


_basis_cache: dict[int, BasisMatrix] = {}
_basis_lock = threading.Lock()


def nakajima_basis(n: int) -> BasisMatrix:
    """Equivariant ``q_λ(1)`` for all ``λ ⊢ n``; raises if the matrix is singular."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _basis_lock:
        if n in _basis_cache:
            return _basis_cache[n]
    vac = EquivClass.unit("H", 0)
    parts = enumerate_partitions(n)
    classes = {lam: q_partition(lam, vac) for lam in parts}
    basis = BasisMatrix(n, parts, classes, {lam: n - len(lam) for lam in parts})
    if basis.determinant() == 0:
        raise BasisError(f"Nakajima classes are dependent for n={n}")
    with _basis_lock:
        _basis_cache[n] = basis
    return basis


def basis_coefficients(cl: EquivClass) -> dict[Partition, LaurentPoly]:
    """Solve ``cl = Σ c_λ(q,t) q_λ(1)``; every ``c_λ`` must be a polynomial.

    Each homogeneous component is solved separately after setting ``t = 1``;
    homogeneity lets ``c_λ`` be rebuilt from its dehomogenization.
    """
    _need_H(cl)
    basis = nakajima_basis(cl.n)
    inv, den, K, gen = basis.inverse()
    from sympy import Poly

    out = {lam: LaurentPoly() for lam in basis.partitions}
    degrees = set()
    for v in cl.restrictions.values():
        if not v.is_polynomial():
            raise SoundnessError("cohomology restrictions must be polynomials")
        degrees |= v.total_degrees()
    for d in sorted(degrees):
        rhs = [_to_sympy_poly(cl[mu].homogeneous_part(d), K, gen) for mu in basis.partitions]
        for row, lam in enumerate(basis.partitions):
            acc = K.zero
            for col, val in enumerate(rhs):
                if val:
                    acc += inv[row, col].element * val
            quo, rem = K.div(acc, den)
            if rem:
                raise SoundnessError(f"coefficient of q_{tuple(lam)}(1) is not a polynomial (degree {d})")
            poly = Poly(K.to_sympy(quo), gen) if quo else None
            target = d - basis.degrees[lam]
            if poly is None:
                continue
            if target < 0 or poly.degree() > target:
                raise SoundnessError(f"coefficient of q_{tuple(lam)}(1) has the wrong degree (degree {d})")
            terms = {}
            for (a,), c in poly.terms():
                terms[(a, target - a)] = Fraction(int(c.p), int(c.q))
            out[lam] = out[lam] + LaurentPoly(terms)
    return out


def nonequiv_reduce(cl: EquivClass) -> tuple[Fraction, ...]:
    """Coordinates in the nonequivariant Nakajima basis, ordered like ``enumerate_partitions``."""
    coeffs = basis_coefficients(cl)
    return tuple(Fraction(coeffs[lam].constant_term()) for lam in enumerate_partitions(cl.n))


def expand_in_basis(n: int, vector) -> EquivClass:
    basis = nakajima_basis(n)
    out = EquivClass("H", "T", n, {mu: LaurentPoly() for mu in basis.partitions})
    for lam, c in zip(basis.partitions, vector):
        if c:
            out = out + basis.classes[lam] * c
    return out


# --- cohomological pushforward coefficients -------------------------------------

def a_coeffs_closed(m: int) -> list[Fraction]:
    """Coefficients of ``x^m (x+1) - (x-1)^m x`` in increasing degree, length ``m+1``."""
    poly = [Fraction(0)] * (m + 2)
    poly[m] += 1
    poly[m + 1] += 1
    for j in range(m + 1):  # (x-1)^m x
        poly[j + 1] -= comb(m, j) * (-1) ** (m - j)
    if poly[m + 1] != 0:
        raise AssertionError("leading terms should cancel")
    return poly[: m + 1]


def A_poly(s: int, m: int) -> list[Fraction]:
    """``A_{s,m}(x)`` with ``π_*((Q-1)^m) = Σ_s A_{s,m}(t^{-1}) P_s`` on the ``T_y`` torus.

    Obtained by expanding ``(Q-1)^m`` binomially and inserting the ``T_y``
    pushforwards of ``Q^j``: ``g_j P_j - x g_{j-1} P_{j-1}`` with
    ``g_j = (1 - x^j)/(1 - x)``.
    """
    def g(j):
        # (1 - x^j)/(1 - x) as a coefficient list; only j >= -1 occurs here
        if j >= 0:
            return [Fraction(1)] * j
        if j == -1:
            return [Fraction(0), Fraction(-1)]  # (1 - x^{-1})/(1 - x) = -x^{-1} -> times x below
        raise ValueError(j)

    out: dict[int, Fraction] = {}

    def add(poly, shift, coeff):
        for k, c in enumerate(poly):
            if c:
                out[k + shift] = out.get(k + shift, 0) + coeff * c

    for j in range(m + 1):
        coeff = comb(m, j) * (-1) ** (m - j)
        if j == s:
            if j >= 0:
                add(g(j), 0, coeff)
        if j - 1 == s:
            # -x g_{j-1}; for j = 0 this is -x * (-x^{-1}) = 1
            if j == 0:
                add([Fraction(1)], 0, coeff)
            else:
                add(g(j - 1), 1, -coeff)
    if not out:
        return [Fraction(0)]
    if min(out) < 0:
        raise AssertionError("A_{s,m} should be a polynomial")
    return [out.get(k, Fraction(0)) for k in range(max(out) + 1)]


def A_poly_alternative(s: int, m: int) -> list[Fraction]:
    """A competing explicit form for ``A_{s,m}``; it disagrees with :func:`A_poly` for m >= 1."""
    if s == -1:
        return [Fraction((-1) ** m)]
    if s == 0:
        return [Fraction(0)]
    out = [Fraction(0)] * (s + 1)
    for k in range(s + 1):
        out[k] += comb(m, s) * (-1) ** s
    for k in range(1, s + 1):
        out[k] -= comb(m, s + 1) * (-1) ** (s + 1)
    return out


def derive_a_coeffs(m: int, A=A_poly) -> list[Fraction]:
    """``a_{k,m}`` from the Chern-character series route.

    ``B_{k,m} = Σ_s s^k A_{s,m}(e^{-x}) / k!`` and ``a_{k,m}`` is its
    ``x^{m-k}`` coefficient.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    e_minus = exp_series(m, -1)
    out = []
    for k in range(m + 1):
        B = PowerSeries.const(0, m)
        for s in range(-1, m + 1):
            weight = Fraction(s) ** k if (s, k) != (0, 0) else Fraction(1)
            if weight:
                B = B + compose_polynomial(A(s, m), e_minus) * weight
        out.append(B[m - k] / factorial(k))
    return out
