"""Exact bivariate Laurent polynomials in ``q, t`` and factored rational functions.

Denominators that come out of localization are products of factors
``1 - q^{-i} t^{-j}``; :class:`RatFunc` keeps them as a multiset of weights and
only expands them when an exact quotient is requested.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


class IntegralityError(ArithmeticError):
    """An exact quotient was requested but the division leaves a remainder."""


class PoleError(ArithmeticError):
    """Specialization hit a negative power of a variable set to zero."""


class _Keep:
    def __repr__(self):
        return "KEEP"


KEEP = _Keep()


class _NoLimit:
    def __repr__(self):
        return "NO_LIMIT"

    def __bool__(self):
        return False


NO_LIMIT = _NoLimit()


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """A finite sum ``Σ c_{a,b} q^a t^b`` with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Number] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[(int(e[0]), int(e[1]))] = _norm(c)
        self.terms: dict[tuple[int, int], Number] = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, eq: int, et: int, c: Number = 1) -> "LaurentPoly":
        return cls({(eq, et): c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # ring structure
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[tuple[int, int], Number] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only exist for monomials")
            ((a, b), c), = self.terms.items()
            return LaurentPoly({(a * k, b * k): Fraction(1) / Fraction(c) ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_polynomial(self) -> bool:
        return all(a >= 0 and b >= 0 for a, b in self.terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def constant_term(self) -> Number:
        return self.terms.get((0, 0), 0)

    def total_degrees(self) -> set[int]:
        return {a + b for a, b in self.terms}

    def homogeneous_part(self, d: int) -> "LaurentPoly":
        return LaurentPoly({e: c for e, c in self.terms.items() if e[0] + e[1] == d})

    def q_valuation(self) -> int:
        return min(a for a, _ in self.terms)

    def q_coefficient(self, k: int) -> "LaurentPoly":
        """Coefficient of ``q^k`` as a Laurent polynomial in ``t`` alone."""
        return LaurentPoly({(0, b): c for (a, b), c in self.terms.items() if a == k})

    def sorted_terms(self):
        return sorted(self.terms.items())

    # substitutions
    def substitute_powers(self, m_q: int, m_t: int) -> "LaurentPoly":
        """Apply ``q -> q^m_q, t -> t^m_t`` (a ring endomorphism)."""
        if m_q == 0 or m_t == 0:
            raise ValueError("exponents must be nonzero")
        out: dict[tuple[int, int], Number] = {}
        for (a, b), c in self.terms.items():
            e = (a * m_q, b * m_t)
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def dual(self) -> "LaurentPoly":
        return self.substitute_powers(-1, -1)

    def swap(self) -> "LaurentPoly":
        """Exchange the roles of ``q`` and ``t``."""
        return LaurentPoly({(b, a): c for (a, b), c in self.terms.items()})

    def specialize(self, q_value=KEEP, t_value=KEEP) -> "LaurentPoly":
        out: dict[tuple[int, int], Number] = {}
        for (a, b), c in self.terms.items():
            if q_value is not KEEP:
                c = c * _power(q_value, a, "q")
                a = 0
            if t_value is not KEEP:
                c = c * _power(t_value, b, "t")
                b = 0
            out[(a, b)] = out.get((a, b), 0) + c
        return LaurentPoly(out)

    def shift(self, a: int, b: int) -> "LaurentPoly":
        return LaurentPoly({(x + a, y + b): c for (x, y), c in self.terms.items()})

    # output
    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0], kv[0][1])):
            mono = "*".join(
                s for s in (_pow_str("q", a), _pow_str("t", b)) if s
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_records(self) -> list[list]:
        out = []
        for (a, b), c in sorted(self.terms.items()):
            c = Fraction(c)
            out.append([a, b, str(c.numerator), str(c.denominator)])
        return out

    @classmethod
    def from_records(cls, records: Iterable) -> "LaurentPoly":
        return cls({(int(a), int(b)): Fraction(int(num), int(den)) for a, b, num, den in records})


def _pow_str(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}" if k > 0 else f"{var}^({k})"


def _power(value, k: int, name: str):
    value = Fraction(value)
    if value == 0 and k < 0:
        raise PoleError(f"{name}=0 at a negative power {name}^{k}")
    return value ** k


Q = LaurentPoly.monomial(1, 0)
T = LaurentPoly.monomial(0, 1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def divide_binomial(p: LaurentPoly, c: Number, a: int, b: int) -> LaurentPoly:
    """Exact quotient ``p / (1 - c q^a t^b)``.

    Terms of ``p`` are grouped along lines in direction ``(a, b)``; on each
    line this is univariate division by ``1 - c x``.
    """
    if (a, b) == (0, 0):
        raise ValueError("binomial with zero exponent")
    lines: dict[tuple[int, int], dict[int, Number]] = {}
    for (x, y), coef in p.terms.items():
        k = x // a if a else y // b
        base = (x - k * a, y - k * b)
        lines.setdefault(base, {})[k] = coef
    out: dict[tuple[int, int], Number] = {}
    for (x0, y0), coeffs in lines.items():
        lo, hi = min(coeffs), max(coeffs)
        prev = 0
        for k in range(lo, hi):
            prev = coeffs.get(k, 0) + c * prev
            if prev:
                out[(x0 + k * a, y0 + k * b)] = prev
        if coeffs.get(hi, 0) + c * prev != 0:
            raise IntegralityError(f"not divisible by 1 - ({c})*q^{a}*t^{b}")
    return LaurentPoly(out)


def divexact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """General exact Laurent division by multivariate long division (grlex).

    Both operands are shifted to polynomials without monomial content first.
    """
    if not den:
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if not num:
        return ZERO
    nq, nt = min(a for a, _ in num.terms), min(b for _, b in num.terms)
    dq, dt = min(a for a, _ in den.terms), min(b for _, b in den.terms)
    rem = dict(num.shift(-nq, -nt).terms)
    d = den.shift(-dq, -dt).terms
    key = lambda e: (e[0] + e[1], e[0])  # noqa: E731  grlex with q > t
    lead = max(d, key=key)
    lead_c = Fraction(d[lead])
    quot: dict[tuple[int, int], Number] = {}
    while rem:
        top = max(rem, key=key)
        sa, sb = top[0] - lead[0], top[1] - lead[1]
        if sa < 0 or sb < 0:
            raise IntegralityError(f"{den} does not divide {num}")
        f = _norm(rem[top] / lead_c)
        quot[(sa, sb)] = f
        for (x, y), c in d.items():
            e = (x + sa, y + sb)
            v = rem.get(e, 0) - f * c
            if v:
                rem[e] = _norm(v)
            else:
                rem.pop(e, None)
    return LaurentPoly(quot).shift(nq - dq, nt - dt)


class WeightFactor(tuple):
    """The factor ``1 - q^{-i} t^{-j}`` attached to a nonzero weight ``(i, j)``."""

    __slots__ = ()

    def __new__(cls, i: int, j: int):
        if (i, j) == (0, 0):
            raise ValueError("zero weight gives a vanishing factor")
        return super().__new__(cls, (int(i), int(j)))

    def expand(self) -> LaurentPoly:
        return LaurentPoly({(0, 0): 1, (-self[0], -self[1]): -1})


def expand_factors(factors: Mapping[tuple[int, int], int]) -> LaurentPoly:
    out = ONE
    for (i, j), mult in sorted(factors.items()):
        out = out * WeightFactor(i, j).expand() ** mult
    return out


def exact_divide(num: LaurentPoly, den: Mapping[tuple[int, int], int]) -> LaurentPoly:
    """Quotient of ``num`` by the product of weight factors ``den``.

    Raises :class:`IntegralityError` when the product does not divide ``num``.
    Dividing factor by factor is equivalent because the Laurent ring is a UFD.
    """
    out = num
    for (i, j), mult in sorted(den.items()):
        for _ in range(mult):
            out = divide_binomial(out, 1, -i, -j)
    return out


class RatFunc:
    """``numerator / Π (1 - q^{-i} t^{-j})`` with the product kept factored."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: Mapping[tuple[int, int], int] | Iterable | None = None):
        self.num = LaurentPoly.coerce(num)
        if den is None:
            den = Counter()
        elif not isinstance(den, Mapping):
            den = Counter(tuple(w) for w in den)
        for w in den:
            WeightFactor(*w)
        self.den = Counter({tuple(w): m for w, m in den.items() if m > 0})

    @classmethod
    def from_factors(cls, num_factors, den_factors, scalar=ONE) -> "RatFunc":
        """Build from weight multisets, cancelling identical factors first."""
        top, bottom = Counter(map(tuple, num_factors)), Counter(map(tuple, den_factors))
        common = top & bottom
        top -= common
        bottom -= common
        return cls(LaurentPoly.coerce(scalar) * expand_factors(top), bottom)

    def _lift(self, den: Counter) -> LaurentPoly:
        extra = den - self.den
        return self.num * expand_factors(extra)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        den = self.den | other.den
        return RatFunc(self._lift(den) + other._lift(den), den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den + other.den)
        return RatFunc(self.num * other, self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc(other)
            except TypeError:
                return NotImplemented
        den = self.den | other.den
        return self._lift(den) == other._lift(den)

    __hash__ = None  # type: ignore[assignment]

    def substitute_powers(self, m_q: int, m_t: int) -> "RatFunc":
        den = Counter()
        for (i, j), mult in self.den.items():
            den[(i * m_q, j * m_t)] += mult
        return RatFunc(self.num.substitute_powers(m_q, m_t), den)

    def dual(self) -> "RatFunc":
        return self.substitute_powers(-1, -1)

    def swap(self) -> "RatFunc":
        den = Counter()
        for (i, j), mult in self.den.items():
            den[(j, i)] += mult
        return RatFunc(self.num.swap(), den)

    def expanded_denominator(self) -> LaurentPoly:
        return expand_factors(self.den)

    def to_laurent(self) -> LaurentPoly:
        return exact_divide(self.num, self.den)

    def __repr__(self):
        den = " * ".join(f"(1 - {WeightFactor(*w).expand().__neg__() + 1})^{m}" if m > 1
                         else f"(1 - {WeightFactor(*w).expand().__neg__() + 1})"
                         for w, m in sorted(self.den.items()))
        return f"RatFunc(({self.num}) / ({den or 1}))"


def ratfunc_sum(fs: Iterable[RatFunc]) -> RatFunc:
    """Sum over the least common multiset of denominators."""
    fs = [f if isinstance(f, RatFunc) else RatFunc(f) for f in fs]
    den = Counter()
    for f in fs:
        den |= f.den
    total = ZERO
    for f in fs:
        total = total + f._lift(den)
    return RatFunc(total, den)


def limit_q(f, direction):
    """``lim`` of ``f`` as ``q -> 0`` or ``q -> ∞`` with ``t`` generic.

    Returns a Laurent polynomial in ``t`` (``0`` when the limit vanishes) or
    :data:`NO_LIMIT` when it diverges.  A finite limit that is not a Laurent
    polynomial in ``t`` raises :class:`IntegralityError`.
    """
    if not isinstance(f, RatFunc):
        f = RatFunc(f)
    if direction in ("inf", float("inf"), "∞"):
        f = f.substitute_powers(-1, 1)
    elif direction not in (0, "0"):
        raise ValueError(f"unknown direction {direction!r}")
    if not f.num:
        return ZERO
    den = f.expanded_denominator()
    vn, vd = f.num.q_valuation(), den.q_valuation()
    if vn < vd:
        return NO_LIMIT
    if vn > vd:
        return ZERO
    return divexact(f.num.q_coefficient(vn), den.q_coefficient(vd))
