"""Localization pushforwards along ``π: Hilb^{n,n+1} -> Hilb^{n+1}``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .laurent import (IntegralityError, NO_LIMIT, ONE, Q, T, LaurentPoly, RatFunc,
                      divide_binomial, limit_q, ratfunc_sum)
from .localization import (EquivClass, linear_form, nested_points, tangent_weights_hilb,
                           tangent_weights_nested)
from .partitions import Box, Partition, arm_leg, corners, enumerate_partitions, remove_box, remove_first_column

NestedPoint = tuple[Partition, Box]


@dataclass(frozen=True)
class NestedClass:
    """Restrictions of a class on Hilb^{n,n+1} to its fixed points ``(λ ⊢ n+1, corner)``."""

    theory: str
    n: int
    values: Mapping[NestedPoint, LaurentPoly]

    @classmethod
    def build(cls, theory: str, n: int, fn: Callable[[Partition, Box], object]) -> "NestedClass":
        return cls(theory, n, {(lam, c): LaurentPoly.coerce(fn(lam, c)) for lam, c in nested_points(n)})

    def __getitem__(self, pt) -> LaurentPoly:
        lam, c = pt
        return self.values[(Partition(lam), Box(*c))]

    def _zip(self, other, op) -> "NestedClass":
        if isinstance(other, NestedClass):
            if (other.theory, other.n) != (self.theory, self.n):
                raise ValueError("nested classes live in different spaces")
            return NestedClass(self.theory, self.n, {pt: op(v, other.values[pt]) for pt, v in self.values.items()})
        return NestedClass(self.theory, self.n, {pt: op(v, other) for pt, v in self.values.items()})

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __pow__(self, k: int):
        return NestedClass(self.theory, self.n, {pt: v ** k for pt, v in self.values.items()})


def restrict_Q(lam, corner, m: int = 1) -> LaurentPoly:
    """K-theory restriction of ``Q^m`` at ``(λ, (k, l))``: ``(q^k t^l)^m``."""
    k, l = corner
    return LaurentPoly.monomial(k * m, l * m)


def c1_Q(lam, corner) -> LaurentPoly:
    k, l = corner
    return linear_form(k, l)


def Q_class(n: int, m: int = 1) -> NestedClass:
    return NestedClass.build("K", n, lambda lam, c: restrict_Q(lam, c, m))


def c1Q_class(n: int, m: int = 1) -> NestedClass:
    return NestedClass.build("H", n, lambda lam, c: c1_Q(lam, c) ** m)


def pullback_p(cl: EquivClass) -> NestedClass:
    """``p^*``: the value at ``(λ, c)`` is the restriction at ``λ`` minus ``c``."""
    return NestedClass.build(cl.theory, cl.n, lambda lam, c: cl[remove_box(lam, c)])


def pullback_pi(cl: EquivClass) -> NestedClass:
    """``π^*``: the value at ``(λ, c)`` is the restriction at ``λ``."""
    if cl.n < 1:
        raise ValueError("π^* needs a class on Hilb^{n+1} with n >= 0")
    return NestedClass.build(cl.theory, cl.n - 1, lambda lam, c: cl[lam])


@lru_cache(maxsize=None)
def _weight_split(lam: Partition, corner: Box) -> tuple[Counter, Counter]:
    top = Counter(tangent_weights_hilb(lam))
    bottom = Counter(tangent_weights_nested(lam, corner))
    common = top & bottom
    return top - common, bottom - common


@lru_cache(maxsize=None)
def r_function(lam: Partition, corner) -> RatFunc:
    """``eu(T_λ Hilb^{n+1}) / eu(T_{(λ,c)} Hilb^{n,n+1})`` with repeats cancelled."""
    top, bottom = _weight_split(Partition(lam), Box(*corner))
    return RatFunc.from_factors(top.elements(), bottom.elements())


def r_tilde(lam: Partition, corner) -> RatFunc:
    return r_function(lam, corner) * restrict_Q(lam, corner)


def W(a: int, b: int) -> RatFunc:
    """``(q^{a+1} - t^b) / (q^a - t^b)``."""
    # q^a - t^b = q^a (1 - q^{-a} t^b)
    return RatFunc((LaurentPoly.monomial(a + 1, 0) - LaurentPoly.monomial(0, b)) * LaurentPoly.monomial(-a, 0),
                   {(a, -b): 1})


def U(a: int, b: int) -> RatFunc:
    """``(q^a - t^{b+1}) / (q^a - t^b)``."""
    return RatFunc((LaurentPoly.monomial(a, 0) - LaurentPoly.monomial(0, b + 1)) * LaurentPoly.monomial(-a, 0),
                   {(a, -b): 1})


def R(lam: Partition, corner) -> RatFunc:
    """Product of ``U`` over boxes below the corner and ``W`` over boxes left of it."""
    k, l = corner
    out = RatFunc(ONE)
    for d in range(l):
        out = out * U(*arm_leg(lam, (k, d)))
    for s in range(k):
        out = out * W(*arm_leg(lam, (s, l)))
    return out


def eval_local_factor(kind: str, *params) -> RatFunc:
    return {"W": W, "U": U, "R": R}[kind](*params)


def push_K(cls: NestedClass, as_ratfunc: bool = False) -> EquivClass:
    """Lefschetz-Riemann-Roch: sum the corner contributions and clear denominators."""
    if cls.theory != "K":
        raise ValueError("push_K needs a K-theory class")
    out = {}
    for lam in enumerate_partitions(cls.n + 1):
        total = ratfunc_sum(r_function(lam, c) * cls.values[(lam, c)] for c in corners(lam))
        try:
            out[lam] = total.to_laurent()
        except IntegralityError as exc:
            raise IntegralityError(f"push_K is not a Laurent polynomial at {lam}: {exc}") from None
    return EquivClass("K", "T", cls.n + 1, out)


def push_K_ratfunc(cls: NestedClass, lam: Partition) -> RatFunc:
    """The unsimplified sum of local contributions at ``λ``."""
    return ratfunc_sum(r_function(lam, c) * cls.values[(lam, c)] for c in corners(lam))


def _divide_linear(p: LaurentPoly, i: int, j: int) -> LaurentPoly:
    if j:
        # i q + j t = j t (1 + (i/j) q t^{-1})
        p = p.shift(0, -1) * Fraction(1, j)
        return divide_binomial(p, Fraction(-i, j), 1, -1) if i else p
    return p.shift(-1, 0) * Fraction(1, i)


def push_H(cls: NestedClass) -> EquivClass:
    """Cohomological LRR with Euler classes ``Π (i q + j t)``."""
    if cls.theory != "H":
        raise ValueError("push_H needs a cohomology class")
    out = {}
    for lam in enumerate_partitions(cls.n + 1):
        parts = []
        den = Counter()
        for c in corners(lam):
            top, bottom = _weight_split(lam, c)
            parts.append((top, bottom, cls.values[(lam, c)]))
            den |= bottom
        total = LaurentPoly()
        for top, bottom, val in parts:
            term = val
            for w in (top + (den - bottom)).elements():
                term = term * linear_form(*w)
            total = total + term
        try:
            for w in sorted(den.elements()):
                total = _divide_linear(total, *w)
        except IntegralityError as exc:
            raise IntegralityError(f"push_H does not clear denominators at {lam}: {exc}") from None
        if not total.is_polynomial():
            raise IntegralityError(f"push_H gave a non-polynomial restriction at {lam}: {total}")
        out[lam] = total
    return EquivClass("H", "T", cls.n + 1, out)


@lru_cache(maxsize=None)
def push_Q_power(n: int, m: int, theory: str = "K") -> EquivClass:
    """``π_*[Q_n^m]`` (K) or ``π_*(c_1(Q_n)^m)`` (H) on Hilb^{n+1}."""
    from . import cache

    def compute():
        return push_K(Q_class(n, m)) if theory == "K" else push_H(c1Q_class(n, m))

    return cache.cached_class(("push", theory, n, m), compute)


def corner_limit_sum(lam: Partition) -> dict[Box, LaurentPoly]:
    """Expected ``q -> 0`` limits of ``R`` at each corner.

    With corners ``(k_i, l_i)`` listed from the top and ``l_{N+1} = -1`` the
    limit at corner ``i`` is ``Σ_{j=l_{i+1}+1}^{l_i} t^j``.
    """
    cs = corners(lam)
    rows = [c.j for c in cs] + [-1]
    return {c: sum((LaurentPoly.monomial(0, j) for j in range(rows[i + 1] + 1, rows[i] + 1)), LaurentPoly())
            for i, c in enumerate(cs)}


def verify_local_identities(lam_max: int) -> list[dict]:
    """Check the W, U and R symmetries and limits for every nonempty λ ⊢ n ≤ lam_max.

    Returns one report entry per violation (empty list when all hold).
    """
    if lam_max < 1:
        raise ValueError("lam_max must be at least 1")
    bad = []

    def fail(check, lam, c, detail):
        bad.append({"check": check, "partition": str(lam), "corner": list(c), "detail": str(detail)})

    for a in range(lam_max + 1):
        for b in range(lam_max + 1):
            if (a, b) == (0, 0):
                continue  # vanishing denominator; never a factor of R
            w, u = W(a, b), U(a, b)
            if w != U(b, a).swap():
                fail("W-U-swap", Partition(()), (a, b), w)
            if a and (limit_q(w, 0) != ONE or limit_q(u, 0) != T or limit_q(u, "inf") != ONE):
                fail("W-U-limits", Partition(()), (a, b), (w, u))
            if w != w.dual() * Q or u != u.dual() * T:
                fail("W-U-duality", Partition(()), (a, b), (w, u))

    for n in range(1, lam_max + 1):
        for lam in enumerate_partitions(n):
            expected = corner_limit_sum(lam)
            for c in corners(lam):
                k, l = c
                Rf = R(lam, c)
                if Rf != r_tilde(lam, c):
                    fail("R=r_tilde", lam, c, Rf)
                if Rf != Rf.dual() * LaurentPoly.monomial(k, l):
                    fail("R-duality", lam, c, Rf)
                if r_tilde(lam, c).dual() != r_tilde(lam, c) * LaurentPoly.monomial(-k, -l):
                    fail("r-duality", lam, c, r_tilde(lam, c))
                lim0 = limit_q(Rf, 0)
                if lim0 is NO_LIMIT or lim0 != expected[c]:
                    fail("R-limit-0", lam, c, lim0)
                if k:
                    tl = remove_first_column(lam)
                    diff = Rf - R(tl, (k - 1, l)) * Q
                    if limit_q(diff, "inf") is NO_LIMIT:
                        fail("R-column-limit-inf", lam, c, diff)
                else:
                    if limit_q(Rf, "inf") is NO_LIMIT:
                        fail("R-limit-inf", lam, c, Rf)
    return bad
