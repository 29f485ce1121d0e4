"""Formal symmetric functions in the power-sum and elementary generators.

A :class:`SymExpr` is a rational combination of words; a word is a sorted
tuple of generators ``("p", k)`` or ``("e", k)``.  ``p_0`` stays symbolic
until evaluation, where it becomes the number of variables.  Negative
``p_k`` are only legal in K-theory (``laurent=True``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

Gen = tuple[str, int]
Word = tuple[Gen, ...]


def _word(gens: Iterable[Gen]) -> Word:
    return tuple(sorted((g for g in gens if g != ("e", 0)), reverse=True))


class SymExpr:
    __slots__ = ("terms", "laurent")

    def __init__(self, terms: Mapping[Word, object] | None = None, laurent: bool = False):
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            w = _word(w)
            for kind, k in w:
                if kind == "e" and k < 0:
                    raise ValueError(f"e_{k} is not a generator")
                if kind == "p" and k < 0 and not laurent:
                    raise ValueError(f"p_{k} needs a Laurent (K-theory) expression")
            c = clean.get(w, 0) + Fraction(c)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.terms = clean
        self.laurent = laurent

    @classmethod
    def one(cls, laurent=False):
        return cls({(): 1}, laurent)

    @classmethod
    def gen(cls, kind: str, k: int, laurent: bool | None = None):
        if laurent is None:
            laurent = kind == "p" and k < 0
        return cls({((kind, k),): 1}, laurent)

    @classmethod
    def p_word(cls, parts: Sequence[int], laurent: bool | None = None):
        if laurent is None:
            laurent = any(k < 0 for k in parts)
        return cls({tuple(("p", k) for k in parts): 1}, laurent)

    # algebra
    def _flag(self, other: "SymExpr") -> bool:
        return self.laurent or other.laurent

    def _coerce(self, other) -> "SymExpr":
        if isinstance(other, SymExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return SymExpr({(): other}, self.laurent)
        raise TypeError(f"cannot combine SymExpr with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return SymExpr(terms, self._flag(other))

    __radd__ = __add__

    def __neg__(self):
        return SymExpr({w: -c for w, c in self.terms.items()}, self.laurent)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SymExpr.one(self.laurent)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def generators(self) -> set[Gen]:
        return {g for w in self.terms for g in w}

    def degree_set(self) -> set[int]:
        return {sum(k for _, k in w) for w in self.terms}

    def __repr__(self):
        return f"SymExpr({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (-len(kv[0]), kv[0]), reverse=False):
            mono = _word_str(w)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out.append(("-" if c < 0 else "+", body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


def _word_str(w: Word) -> str:
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        kind, k = w[i]
        parts.append(f"{kind}{k}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "*".join(parts)


def multiply(a: SymExpr, b: SymExpr) -> SymExpr:
    terms: dict[Word, Fraction] = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            w = _word(w1 + w2)
            terms[w] = terms.get(w, 0) + c1 * c2
    return SymExpr(terms, a.laurent or b.laurent)


@lru_cache(maxsize=None)
def _e_in_p(k: int) -> SymExpr:
    # Newton: k e_k = Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    if k == 0:
        return SymExpr.one()
    acc = SymExpr()
    for i in range(1, k + 1):
        acc = acc + _e_in_p(k - i) * SymExpr.gen("p", i) * (-1) ** (i - 1)
    return acc * Fraction(1, k)


def e_to_p(expr: SymExpr) -> SymExpr:
    """Rewrite every elementary generator in the power-sum basis."""
    out = SymExpr(laurent=expr.laurent)
    for w, c in expr.terms.items():
        term = SymExpr({(): c}, expr.laurent)
        for kind, k in w:
            term = term * (_e_in_p(k) if kind == "e" else SymExpr.gen("p", k, expr.laurent))
        out = out + term
    return out


def adams_substitute(expr: SymExpr, m: int) -> SymExpr:
    """``p_k -> p_{km}``; elementary generators must be converted first."""
    if m == 0:
        raise ValueError("Adams operations need a nonzero index")
    if any(kind == "e" for kind, _ in expr.generators()):
        raise ValueError("adams_substitute works in the power-sum basis; call e_to_p first")
    return SymExpr({tuple(("p", k * m) for _, k in w): c for w, c in expr.terms.items()}, True)


def evaluate(expr: SymExpr, roots: Sequence, one, power: Callable | None = None):
    """Evaluate on the variable multiset ``roots``.

    ``one`` is the unit of the target ring; ``power(r, k)`` defaults to ``r**k``.
    ``p_0`` becomes ``len(roots)``.
    """
    power = power or (lambda r, k: r ** k)
    cache: dict[Gen, object] = {}

    def value(g: Gen):
        if g not in cache:
            kind, k = g
            if kind == "p":
                v = one * len(roots) if k == 0 else sum((power(r, k) for r in roots), one * 0)
            else:
                v = elementary(roots, k, one)
            cache[g] = v
        return cache[g]

    total = one * 0
    for w, c in expr.terms.items():
        term = one * c
        for g in w:
            term = term * value(g)
        total = total + term
    return total


def elementary(roots: Sequence, k: int, one):
    """``e_k`` of ``roots`` by the product expansion ``Π (1 + r z)``."""
    es = [one] + [one * 0] * k
    for r in roots:
        for i in range(k, 0, -1):
            es[i] = es[i] + es[i - 1] * r
    return es[k]


def subsets_expansion(lam: Sequence[int], mode: str, m: int = 1) -> SymExpr:
    """Closed-form subset sums for ``q_1``, ``rho`` and ``q_m`` on ``P_λ``.

    The result lives on the target Hilbert scheme; ``p_0`` there is resolved
    by the caller.
    """
    lam = tuple(lam)
    if any(k < 0 for k in lam):
        raise ValueError("entries must be non-negative")
    if mode == "q1":
        mode, m = "qm", 1
    if mode == "qm" and m < 1:
        raise ValueError("q_m needs m >= 1")
    out = SymExpr()
    idx = range(len(lam))
    for size in range(len(lam) + 1):
        for A in combinations(idx, size):
            lA = sum(lam[i] for i in A)
            rest = [lam[i] for i in idx if i not in A]
            if mode == "rho":
                coeff = (-1) ** (size + 1) * (lA + 2)
                word = rest + [lA + 1]
            elif mode == "qm":
                coeff = (-1) ** (m + 1) * (-1) ** size * m ** size * (lA + m)
                word = rest + [lA + m - 1]
            else:
                raise ValueError(f"unknown mode {mode!r}")
            out = out + SymExpr.p_word(word) * coeff
    return out


_TOKEN = re.compile(r"\s*(?:(?P<gen>[pe]-?\d+)|(?P<num>\d+)|(?P<op>[-+*/^()]))")


def parse(text: str, laurent: bool | None = None) -> SymExpr:
    """Parse ``"p1^2*p3 - 2*e2"``; ``p-1`` is the generator ``p_{-1}``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        if m.group("gen"):
            tokens.append(("gen", m.group("gen")))
        elif m.group("num"):
            tokens.append(("num", int(m.group("num"))))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise ValueError("empty expression")
    flag = bool(laurent) or any(t == "gen" and v.startswith("p-") for t, v in tokens)
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            acc = acc + term() if op == "+" else acc - term()
        return acc

    def term():
        acc = factor()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()[1]
            rhs = factor()
            if op == "*":
                acc = acc * rhs
            else:
                if set(rhs.terms) != {()}:
                    raise ValueError("can only divide by a number")
                acc = acc * (1 / rhs.terms[()])
        return acc

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "gen":
            return SymExpr.gen(val[0], int(val[1:]), flag)
        if kind == "num":
            return SymExpr({(): val}, flag)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return SymExpr(result.terms, flag)
