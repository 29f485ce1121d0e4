"""Truncated univariate power series with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence


class PowerSeries:
    """``c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [Fraction(c) for c in list(coeffs)[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    @classmethod
    def const(cls, c, order: int) -> "PowerSeries":
        return cls([c], order)

    def _check(self, other: "PowerSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.const(other, self.order)
        n = self._check(other)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * Fraction(other) for c in self.coeffs], self.order)
        n = self._check(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = PowerSeries.const(1, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = self._check(other)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient x^{k} is beyond the truncation order {self.order}")
        return self.coeffs[k]

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def exp(self) -> "PowerSeries":
        """``exp`` of a series without constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term to stay exact")
        out = PowerSeries.const(1, self.order)
        term = PowerSeries.const(1, self.order)
        for k in range(1, self.order + 1):
            term = term * self * Fraction(1, k)
            out = out + term
        return out


def exp_series(order: int, scale=1) -> PowerSeries:
    """``e^{scale * x}`` truncated at ``order``."""
    s = Fraction(scale)
    return PowerSeries([s ** k / factorial(k) for k in range(order + 1)], order)


def compose_polynomial(poly: Sequence, inner: PowerSeries) -> PowerSeries:
    """``Σ poly[k] * inner^k`` (e.g. ``A(e^{-x})`` for ``inner = e^{-x}``)."""
    out = PowerSeries.const(0, inner.order)
    power = PowerSeries.const(1, inner.order)
    for c in poly:
        out = out + power * c
        power = power * inner
    return out
