"""Registry of verifiable statements and the machinery to run them.

Each case knows its parameter grid and a check that returns witnesses of
failure (an empty list means the instance holds).  ``n`` in a report is
always the largest number of points involved, i.e. the target Hilbert scheme.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable

from .laurent import (KEEP, IntegralityError, NO_LIMIT, ONE, Q, T, LaurentPoly, RatFunc, exact_divide,
                      limit_q)
from .localization import (EquivClass, kirwan_H, kirwan_K, nested_points, specialize_class,
                           tangent_weights_hilb, tangent_weights_nested)
from .operators import (A_poly, A_poly_alternative, BasisError, SoundnessError, a_coeffs_closed,
                        adams_line_identity, derive_a_coeffs, nakajima_basis, nonequiv_reduce,
                        q1_H, qK_1m, qm_H, rho)
from .partitions import enumerate_partitions, remove_first_column
from .pushforward import (NestedClass, Q_class, c1Q_class, pullback_p, pullback_pi, push_K,
                          push_Q_power, verify_local_identities)
from .symfunc import SymExpr, subsets_expansion

PUSH_N_MAX = 8
OPERATOR_N_MAX = 6
M_MIN, M_MAX = -3, 6
K_MAX = 5


@dataclass(frozen=True)
class Params:
    n_max: int | None = None
    m_min: int = M_MIN
    m_max: int = M_MAX


@dataclass
class CaseResult:
    theorem: str
    n: int | None
    m: int | None
    status: str  # pass | fail | error
    witnesses: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"theorem": self.theorem, "n": self.n, "m": self.m, "status": self.status,
               "witnesses": self.witnesses}
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass(frozen=True)
class TheoremCase:
    id: str
    summary: str
    mode: str  # equivariant-tuple | Ty-tuple | nonequiv-basis | ratfunc-identity | limit-check
    suite: str  # push | operator
    grid: Callable[[Params, int], list]
    check: Callable[..., object]

    def default_n_max(self) -> int:
        return PUSH_N_MAX if self.suite == "push" else OPERATOR_N_MAX


# --- small helpers ---------------------------------------------------------------

def P(k: int, N: int) -> EquivClass:
    return kirwan_K(SymExpr.p_word([k]), N)


def Ph(word, N: int) -> EquivClass:
    return kirwan_H(SymExpr.p_word(list(word)), N)


def c(k: int, N: int) -> EquivClass:
    return kirwan_H(SymExpr.gen("e", k), N)


def ty(cl: EquivClass) -> EquivClass:
    return specialize_class(cl, "Ty")


def geometric(m: int) -> LaurentPoly:
    """``(1 - t^{-m}) / (1 - t^{-1})`` by exact division."""
    return exact_divide(ONE - T ** (-m), Counter({(0, 1): 1}))


def scale(cl: EquivClass, v: LaurentPoly) -> EquivClass:
    return cl.map(lambda r: r * v)


def diff_witness(lhs: EquivClass, rhs: EquivClass, **extra) -> list[dict]:
    for lam in lhs.partitions():
        if lhs[lam] != rhs[lam]:
            return [dict(extra, partition=str(lam), lhs=str(lhs[lam]), rhs=str(rhs[lam]))]
    return []


def vector_witness(lhs: EquivClass, rhs: EquivClass, **extra) -> list[dict]:
    a, b = nonequiv_reduce(lhs), nonequiv_reduce(rhs)
    if a == b:
        return []
    return [dict(extra, basis=[str(p) for p in nakajima_basis(lhs.n).partitions],
                 lhs=[str(x) for x in a], rhs=[str(x) for x in b])]


def unit_nested(n: int, theory: str) -> NestedClass:
    return NestedClass.build(theory, n, lambda lam, corner: ONE)


def nonneg_sequences(total: int, largest: int, length: int) -> list[tuple[int, ...]]:
    """Non-increasing sequences of entries ``0..largest`` with sum ``<= total``."""
    out = [()]
    for size in range(1, length + 1):
        def rec(prefix, cap, left):
            if len(prefix) == size:
                out.append(tuple(prefix))
                return
            for v in range(min(cap, left), -1, -1):
                rec(prefix + [v], v, left - v)
        rec([], largest, total)
    return out


SEQUENCES = nonneg_sequences(4, 3, 3)


def _ms(p: Params, lo=None, hi=None):
    a = p.m_min if lo is None else max(lo, p.m_min)
    b = p.m_max if hi is None else min(hi, p.m_max)
    return range(a, b + 1)


# --- pushforward statements --------------------------------------------------------

def grid_targets(p, n_max):
    return [(N, None) for N in range(1, n_max + 1)]


def grid_targets_m(lo=None, hi=None):
    def grid(p, n_max):
        return [(N, m) for N in range(1, n_max + 1) for m in _ms(p, lo, hi)]
    return grid


def check_prop_m1(N, m):
    return diff_witness(push_Q_power(N - 1, 1, "K"), kirwan_K(SymExpr.gen("e", 1), N))


def check_cor_m0(N, m):
    V = kirwan_K(SymExpr.gen("e", 1), N)
    return diff_witness(push_Q_power(N - 1, 0, "K"), V.map(LaurentPoly.dual))


def check_duality(N, m):
    return diff_witness(push_Q_power(N - 1, m, "K"), push_Q_power(N - 1, 1 - m, "K").map(LaurentPoly.dual))


def check_limind3(N, m):
    f = push_Q_power(N - 1, 1, "K")
    bad = []
    for lam in f.partitions():
        lim = limit_q(RatFunc(f[lam]), 0)
        want = sum((LaurentPoly.monomial(0, i) for i in range(lam[0])), LaurentPoly())
        if lim is NO_LIMIT or lim != want:
            bad.append({"partition": str(lam), "lhs": str(lim), "rhs": str(want)})
            break
    return bad


def check_limind4(N, m):
    f = push_Q_power(N - 1, 1, "K")
    for lam in f.partitions():
        rest = remove_first_column(lam)
        g = push_Q_power(rest.n - 1, 1, "K")[rest] if rest.n else LaurentPoly()
        d = f[lam] - Q * g
        if limit_q(RatFunc(d), "inf") is NO_LIMIT:
            return [{"partition": str(lam), "difference": str(d)}]
    return []


def push_Ty_formula(m: int, N: int) -> EquivClass:
    return ty(scale(P(m, N), geometric(m)) - scale(P(m - 1, N), geometric(m - 1) * T ** -1))


def check_push_Ty(N, m):
    return diff_witness(ty(push_Q_power(N - 1, m, "K")), push_Ty_formula(m, N))


def _at_t1(terms: dict) -> dict:
    out = {}
    for word, coeff in terms.items():
        v = Fraction(coeff.specialize(KEEP, 1).constant_term()) if isinstance(coeff, LaurentPoly) else Fraction(coeff)
        if v:
            out[word] = out.get(word, 0) + v
    return {w: v for w, v in out.items() if v}


def _word(*parts) -> tuple:
    return tuple(sorted(parts, reverse=True))


def check_push_noneq(N, m):
    """The identity on ``T_y`` plus the ``t = 1`` value of its coefficients."""
    bad = check_push_Ty(N, m)
    equiv = {_word(m): geometric(m), _word(m - 1): -geometric(m - 1) * T ** -1}
    plain = {}
    for w, v in ((_word(m), m), (_word(m - 1), -(m - 1))):
        plain[w] = plain.get(w, 0) + v
    plain = {w: Fraction(v) for w, v in plain.items() if v}
    if _at_t1(equiv) != plain:
        bad.append({"coefficients_at_t1": {str(k): str(v) for k, v in _at_t1(equiv).items()},
                    "expected": {str(k): str(v) for k, v in plain.items()}})
    return bad


def check_adams1(N, m):
    """Nested minus ordinary tangent ``T_y``-characters is ``t - t^{l+1}``."""
    for lam, corner in nested_points(N - 1):
        nested = Counter(j for _, j in tangent_weights_nested(lam, corner))
        hilb = Counter(j for _, j in tangent_weights_hilb(lam))
        diff = Counter(nested)
        diff.subtract(hilb)
        diff = {j: v for j, v in diff.items() if v}
        want = {} if corner.j == 0 else {1: 1, corner.j + 1: -1}
        if diff != want:
            return [{"partition": str(lam), "corner": list(corner), "lhs": sorted(diff.items()),
                     "rhs": sorted(want.items())}]
    return []


def grid_adams2(p, n_max):
    return [(None, m) for m in _ms(p, 2)]


def check_adams2(N, m):
    bad = []
    for line in (Q, Q ** 2 * T ** -1):
        lhs, rhs = adams_line_identity(m, line)
        if lhs != rhs:
            bad.append({"line": str(line), "lhs": str(lhs), "rhs": str(rhs)})
    return bad


def grid_Q2(p, n_max):
    return [(N, 2) for N in range(1, n_max + 1)]


def check_Q2_T(N, m):
    x = LaurentPoly.monomial(-1, -1)
    rhs = (scale(P(2, N), ONE + x) - scale(P(1, N), x)
           + scale(kirwan_K(SymExpr.gen("e", 2), N), (ONE - Q ** -1) * (ONE - T ** -1)))
    return diff_witness(push_Q_power(N - 1, 2, "K"), rhs)


def pushH_Ty_formula(m: int, N: int) -> EquivClass:
    a = a_coeffs_closed(m)
    out = EquivClass.build("H", "T", N, lambda lam: LaurentPoly())
    for k in range(m + 1):
        if a[k]:
            out = out + scale(Ph([k], N), LaurentPoly.monomial(0, m - k, a[k]))
    return ty(out)


def check_pushH_Ty(N, m):
    return diff_witness(ty(push_Q_power(N - 1, m, "H")), pushH_Ty_formula(m, N))


def check_pushH_noneq(N, m):
    return vector_witness(push_Q_power(N - 1, m, "H"), Ph([m], N) * (m + 1))


def ch_part(p: LaurentPoly, d: int) -> LaurentPoly:
    """Degree-``d`` part of the Chern character of a K-theory restriction."""
    out = LaurentPoly()
    for (i, j), coeff in p.terms.items():
        out = out + (LaurentPoly.monomial(1, 0, i) + LaurentPoly.monomial(0, 1, j)) ** d * coeff
    return out * Fraction(1, factorial(d))


def grid_ch2(p, n_max):
    return [(None, m) for m in _ms(p, 0)] + [(N, m) for N in range(1, n_max + 1) for m in _ms(p, 0)]


def check_ch2(N, m):
    """Three routes to ``a_{k,m}``: series, ``T_y`` K-decomposition, Chern character."""
    if N is None:
        got, want = derive_a_coeffs(m), a_coeffs_closed(m)
        bad = [] if got == want else [{"series": [str(x) for x in got], "closed": [str(x) for x in want]}]
        alt = derive_a_coeffs(m, A_poly_alternative) == want
        return bad, {"alternative_A_formula_reproduces_closed_form": alt}
    n = N - 1
    bad = []
    power = (Q_class(n, 1) - unit_nested(n, "K")) ** m
    pushed = push_K(power)
    rhs = EquivClass.build("K", "T", N, lambda lam: LaurentPoly())
    for s in range(-1, m + 1):
        coeff = sum((LaurentPoly.monomial(0, -k, a) for k, a in enumerate(A_poly(s, m))), LaurentPoly())
        rhs = rhs + scale(P(s, N), coeff)
    bad += diff_witness(ty(pushed), ty(rhs), route="K-decomposition")
    target = push_Q_power(n, m, "H")
    for lam in pushed.partitions():
        for d in range(m + 1):
            part = ch_part(pushed[lam], d)
            want = target[lam] if d == m else LaurentPoly()
            if part != want:
                bad.append({"route": "chern-character", "partition": str(lam), "degree": d,
                            "lhs": str(part), "rhs": str(want)})
                return bad, {}
    return bad, {}


def check_LRRcoh(N, m):
    n = N - 1
    lam = enumerate_partitions(N)[0]
    got = push_Q_power(n, m, "H")[lam]
    want = LaurentPoly.monomial(0, m, n ** m * (n + 1)) if (n or m) else LaurentPoly.const(1)
    bad = []
    if got != want:
        bad.append({"partition": str(lam), "torus": "T", "lhs": str(got), "rhs": str(want)})
    if got.specialize(0, KEEP) != want:
        bad.append({"partition": str(lam), "torus": "Ty", "lhs": str(got.specialize(0, KEEP)), "rhs": str(want)})
    return bad


def check_appendix(N, m):
    return verify_local_identities(N)


def grid_single_top(p, n_max):
    return [(n_max, None)]


# --- operator statements -------------------------------------------------------------

def check_q1_ses(N, m):
    n = N - 1
    bad = []
    V = lambda k: kirwan_K(SymExpr.gen("e", 1), k)
    lhs = pullback_p(V(n))
    rhs = pullback_pi(V(N)) - Q_class(n, 1)
    if not _nested_equal(lhs, rhs):
        bad.append({"identity": "K tautological sequence"})
    c1 = c1Q_class(n, 1)
    for k in range(N + 1):
        left = pullback_p(c(k, n)) + (pullback_p(c(k - 1, n)) * c1 if k else _zero_nested(n))
        if not _nested_equal(left, pullback_pi(c(k, N))):
            bad.append({"identity": "total Chern class", "k": k})
        if not _nested_equal(pullback_p(Ph([k], n)), pullback_pi(Ph([k], N)) - c1Q_class(n, k)):
            bad.append({"identity": "power sums", "k": k})
    return bad


def _zero_nested(n):
    return NestedClass.build("H", n, lambda lam, corner: LaurentPoly())


def _nested_equal(a: NestedClass, b: NestedClass) -> bool:
    return all(a[pt] == b[pt] for pt in a.values)


def check_cor_q1(N, m):
    n = N - 1
    bad = []
    for k in range(K_MAX + 1):
        rhs = EquivClass.build("H", "T", N, lambda lam: LaurentPoly())
        for j in range(k + 1):
            rhs = rhs + c(k - j, N) * push_Q_power(n, j, "H") * (-1) ** j
        bad += diff_witness(q1_H(c(k, n)), rhs, statement="chern", k=k)
        rhs = Ph([k], N) * push_Q_power(n, 0, "H") - push_Q_power(n, k, "H")
        bad += diff_witness(q1_H(Ph([k], n)), rhs, statement="power-sum", k=k)
        if bad:
            break
    return bad


def check_q1_chern(N, m):
    n = N - 1
    for k in range(K_MAX + 1):
        expr = SymExpr()
        for j in range(k + 1):
            expr = expr + SymExpr.gen("e", k - j) * SymExpr.p_word([j]) * ((-1) ** j * (j + 1))
        bad = vector_witness(q1_H(c(k, n)), kirwan_H(expr, N), k=k)
        if bad:
            return bad
    return []


def check_nakp(N, m):
    n = N - 1
    for k in range(K_MAX + 1):
        bad = vector_witness(q1_H(Ph([k], n)), Ph([k], N) * (n - k), k=k)
        if bad:
            return bad
    for lam in SEQUENCES:
        bad = vector_witness(q1_H(Ph(lam, n)), kirwan_H(subsets_expansion(lam, "q1"), N), sequence=list(lam))
        if bad:
            return bad
    return []


def check_rho(N, m):
    n = N - 1
    for k in range(K_MAX + 1):
        rhs = Ph([k + 1], N) * (k + 2) - Ph([k, 1], N) * 2
        bad = vector_witness(rho(Ph([k], n)), rhs, k=k)
        if bad:
            return bad
    for lam in SEQUENCES:
        bad = vector_witness(rho(Ph(lam, n)), kirwan_H(subsets_expansion(lam, "rho"), N), sequence=list(lam))
        if bad:
            return bad
    return []


def grid_ops(lo):
    def grid(p, n_max):
        return [(N, m) for m in _ms(p, lo) for N in range(m, n_max + 1)]
    return grid


def check_evain(N, m):
    """The recursive ``q_m`` produces genuine classes with the right degree shift."""
    n = N - m
    tests = [(str(k), Ph([k], n)) for k in range(4)] + [("1", EquivClass.unit("H", n))]
    for name, cl in tests:
        degs = set().union(*(v.total_degrees() for v in cl.restrictions.values())) if not cl.is_zero() else set()
        out = qm_H(m, cl)
        for lam, v in out.restrictions.items():
            if not v.is_polynomial():
                return [{"class": name, "partition": str(lam), "problem": "not polynomial", "value": str(v)}]
            if v and not v.total_degrees() <= {d + m - 1 for d in degs}:
                return [{"class": name, "partition": str(lam), "problem": "degree shift", "value": str(v)}]
        nonequiv_reduce(out)  # raises SoundnessError if not in the polynomial span
    return []


def check_qm(N, m):
    n = N - m
    equivariant = True
    for lam in SEQUENCES:
        lhs = qm_H(m, Ph(lam, n))
        rhs = kirwan_H(subsets_expansion(lam, "qm", m), N)
        bad = vector_witness(lhs, rhs, sequence=list(lam))
        if bad:
            return bad, {}
        if equivariant and diff_witness(lhs, rhs):
            equivariant = False
    return [], {"closed_form_holds_equivariantly": equivariant}


def check_cor_qm(N, m):
    n = N - m
    sign = (-1) ** (m + 1)
    for k in range(K_MAX + 1):
        rhs = (Ph([k, m - 1], N) * m - Ph([k + m - 1], N) * (m * (m + k))) * sign
        bad = vector_witness(qm_H(m, Ph([k], n)), rhs, k=k)
        if bad:
            return bad
    return []


def qK_Ty_terms(k: int, m: int) -> dict:
    """``P_k π_*(Q^m) - π_*(Q^{k+m})`` on ``T_y`` as word -> coefficient in ``t``."""
    out: dict = {}

    def add(word, coeff):
        out[word] = out.get(word, LaurentPoly()) + coeff

    add(_word(k, m), geometric(m))
    add(_word(k, m - 1), -geometric(m - 1) * T ** -1)
    add(_word(k + m), -geometric(k + m))
    add(_word(k + m - 1), geometric(k + m - 1) * T ** -1)
    return {w: v for w, v in out.items() if v}


def qK_plain_terms(k: int, m: int) -> dict:
    out: dict = {}
    for word, v in ((_word(k, m), m), (_word(k, m - 1), -(m - 1)), (_word(k + m), -(k + m)),
                    (_word(k + m - 1), k + m - 1)):
        out[word] = out.get(word, 0) + Fraction(v)
    return {w: v for w, v in out.items() if v}


def check_qK(N, m):
    n = N - 1
    for k in range(0, 5):
        terms = qK_Ty_terms(k, m)
        rhs = EquivClass.build("K", "T", N, lambda lam: LaurentPoly())
        for word, coeff in terms.items():
            rhs = rhs + scale(kirwan_K(SymExpr.p_word(list(word)), N), coeff)
        lhs = qK_1m(m, P(k, n))
        bad = diff_witness(ty(lhs), ty(rhs), k=k)
        if bad:
            return bad
        if _at_t1(terms) != qK_plain_terms(k, m):
            return [{"k": k, "coefficients_at_t1": {str(w): str(v) for w, v in _at_t1(terms).items()}}]
    return []


def grid_comb(p, n_max):
    return [(None, None)]


def check_comb(N, m, instances: int = 200, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(instances):
        lam = [rng.randint(0, 5) for _ in range(rng.randint(1, 6))]
        C = [i for i in range(len(lam)) if rng.random() < 0.6]
        mm = rng.randint(1, 5)
        l = lambda S: sum(lam[i] for i in S)
        subsets = [A for r in range(len(C) + 1) for A in combinations(C, r)]
        first = sum(mm ** len(A) * l(A) for A in subsets)
        second = sum(mm ** (len(A) + 1) * l(set(C) - set(A)) for A in subsets)
        closed = Fraction(l(C) * mm) * Fraction(1 + mm) ** (len(C) - 1)
        if not first == second == closed:
            return [{"sequence": lam, "subset": C, "m": mm, "values": [str(first), str(second), str(closed)]}]
    return []


def check_basis(N, m):
    basis = nakajima_basis(N)  # raises BasisError when singular
    return [], {"determinant_at_t1": str(basis.determinant())}


def grid_commute(p, n_max):
    return [(N, None) for N in range(2, n_max + 1)]


def check_commute(N, m):
    for i, j in combinations(range(1, 4), 2):
        n = N - i - j
        if n < 0:
            continue
        for k in range(4):
            cl = Ph([k], n)
            bad = diff_witness(qm_H(i, qm_H(j, cl)), qm_H(j, qm_H(i, cl)), i=i, j=j, k=k)
            if bad:
                return bad
    return []


# --- registry ------------------------------------------------------------------------

REGISTRY: dict[str, TheoremCase] = {case.id: case for case in [
    TheoremCase("prop-m1", "pushforward of Q equals the tautological bundle", "equivariant-tuple", "push",
                grid_targets, check_prop_m1),
    TheoremCase("cor-m0", "pushforward of the structure sheaf equals the dual tautological bundle",
                "equivariant-tuple", "push", grid_targets, check_cor_m0),
    TheoremCase("prop-duality", "pushforward of Q^m is dual to pushforward of Q^(1-m)", "equivariant-tuple",
                "push", grid_targets_m(), check_duality),
    TheoremCase("lem-limind3", "q -> 0 limit of the pushforward of Q", "limit-check", "push",
                grid_targets, check_limind3),
    TheoremCase("lem-limind4", "f(lam) - q f(lam without first column) has a q -> oo limit", "limit-check",
                "push", grid_targets, check_limind4),
    TheoremCase("thm-push-Ty", "pushforward of Q^m on the one-dimensional torus", "Ty-tuple", "push",
                grid_targets_m(), check_push_Ty),
    TheoremCase("cor-push-noneq", "nonequivariant pushforward of Q^m", "Ty-tuple", "push",
                grid_targets_m(), check_push_noneq),
    TheoremCase("lem-adams1", "relative tangent bundle on the one-dimensional torus", "Ty-tuple", "push",
                grid_targets, check_adams1),
    TheoremCase("lem-adams2", "Adams/Bott identity for a line bundle", "ratfunc-identity", "push",
                grid_adams2, check_adams2),
    TheoremCase("rem-Q2-T", "full-torus pushforward of Q^2 with the second exterior power term",
                "equivariant-tuple", "push", grid_Q2, check_Q2_T),
    TheoremCase("thm-pushH-Ty", "cohomological pushforward of c1(Q)^m on the one-dimensional torus",
                "Ty-tuple", "push", grid_targets_m(0), check_pushH_Ty),
    TheoremCase("cor-pushH", "nonequivariant cohomological pushforward of c1(Q)^m", "nonequiv-basis",
                "operator", grid_targets_m(0), check_pushH_noneq),
    TheoremCase("lem-ch2-coeffs", "a_{k,m} by series, K-decomposition and Chern character", "Ty-tuple",
                "push", grid_ch2, check_ch2),
    TheoremCase("lem-LRRcoh", "pushforward of c1(Q)^m at the single-column partition", "equivariant-tuple",
                "push", grid_targets_m(0), check_LRRcoh),
    TheoremCase("prop-q1-ses", "pullback identities from the tautological exact sequence",
                "equivariant-tuple", "push", grid_targets, check_q1_ses),
    TheoremCase("cor-q1", "q1 of Chern classes and power sums via pushforwards", "equivariant-tuple",
                "operator", grid_targets, check_cor_q1),
    TheoremCase("thm-q1-chern", "q1 of Chern classes in the Kirwan image", "nonequiv-basis", "operator",
                grid_targets, check_q1_chern),
    TheoremCase("thm-nakp", "q1 of power-sum products", "nonequiv-basis", "operator", grid_targets, check_nakp),
    TheoremCase("prop-rho", "rho of power-sum products", "nonequiv-basis", "operator", grid_targets, check_rho),
    TheoremCase("thm-evain-consistency", "recursive q_m yields genuine classes of the right degree",
                "nonequiv-basis", "operator", grid_ops(2), check_evain),
    TheoremCase("thm-qm", "q_m of power-sum products by subset sums", "nonequiv-basis", "operator",
                grid_ops(1), check_qm),
    TheoremCase("cor-qm", "q_m of a single power sum", "nonequiv-basis", "operator", grid_ops(1), check_cor_qm),
    TheoremCase("prop-qK", "K-theoretic q_{1,m} of power sums", "Ty-tuple", "operator",
                grid_targets_m(-2, 4), check_qK),
    TheoremCase("lem-qm-comb", "weighted subset sums of a sequence", "ratfunc-identity", "operator",
                grid_comb, check_comb),
    TheoremCase("appendix-A", "W/U/R rational functions: symmetries and limits", "limit-check", "push",
                grid_single_top, check_appendix),
    TheoremCase("nakajima-basis", "Nakajima classes are linearly independent", "nonequiv-basis", "operator",
                grid_targets, check_basis),
    TheoremCase("creation-commute", "creation operators commute", "equivariant-tuple", "operator",
                grid_commute, check_commute),
]}


def run_instance(theorem: str, n, m) -> CaseResult:
    """Run one grid point; arithmetic failures become ``error`` results."""
    case = REGISTRY[theorem]
    try:
        out = case.check(n, m)
    except (IntegralityError, SoundnessError, BasisError) as exc:
        return CaseResult(theorem, n, m, "error", [{"error": type(exc).__name__, "detail": str(exc)}])
    witnesses, notes = out if isinstance(out, tuple) else (out, {})
    return CaseResult(theorem, n, m, "fail" if witnesses else "pass", witnesses, notes)


def instances(theorem: str, params: Params) -> list[tuple]:
    case = REGISTRY[theorem]
    n_max = params.n_max if params.n_max is not None else case.default_n_max()
    return [(theorem, n, m) for n, m in case.grid(params, n_max)]

