"""Fixed-point model of equivariant K-theory and cohomology of Hilb^n(C^2)."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .laurent import KEEP, ONE, LaurentPoly, WeightFactor
from .partitions import Box, Partition, arm_leg, corners, enumerate_partitions, remove_box
from . import symfunc
from .symfunc import SymExpr

THEORIES = ("K", "H")
TORI = ("T", "Ty", "NONE")


def box_weights(lam: Partition, box) -> tuple[tuple[int, int], tuple[int, int]]:
    """``(-a, b+1)`` and ``(a+1, -b)`` for the box's arm ``a`` and leg ``b``."""
    a, b = arm_leg(lam, box)
    return (-a, b + 1), (a + 1, -b)


def reading_order(lam: Partition) -> list[Box]:
    """Boxes from the top row down, left to right within a row."""
    return sorted(lam.boxes(), key=lambda bx: (-bx.j, bx.i))


def tangent_weights_hilb(lam: Partition) -> list[tuple[int, int]]:
    """Two weights per box, boxes in reading order."""
    out = []
    for box in reading_order(lam):
        out.extend(box_weights(lam, box))
    return out


def nested_weight_table(lam: Partition, corner) -> list[tuple[Box, tuple, tuple, tuple[bool, bool]]]:
    """Per box of ``lam``: both weights at the nested point and which were changed.

    Boxes below the added box lose one from the second coordinate of
    ``(-a, b+1)``; boxes left of it lose one from the first coordinate of
    ``(a+1, -b)``.
    """
    k, l = corner
    if tuple(corner) not in corners(lam):
        raise ValueError(f"{tuple(corner)} is not a corner of {lam}")
    rows = []
    for box in reading_order(lam):
        (x1, y1), (x2, y2) = box_weights(lam, box)
        changed = [False, False]
        if box.i == k and box.j < l:
            y1 -= 1
            changed[0] = True
        if box.j == l and box.i < k:
            x2 -= 1
            changed[1] = True
        rows.append((box, (x1, y1), (x2, y2), tuple(changed)))
    return rows


def tangent_weights_nested(lam: Partition, corner) -> list[tuple[int, int]]:
    out = []
    for _, w1, w2, _ in nested_weight_table(lam, corner):
        out.extend((w1, w2))
    return out


def euler_K(weights) -> Counter:
    """The multiset of factors ``1 - q^{-i} t^{-j}``."""
    for w in weights:
        WeightFactor(*w)
    return Counter(tuple(w) for w in weights)


def linear_form(i: int, j: int) -> LaurentPoly:
    return LaurentPoly({(1, 0): i, (0, 1): j})


def euler_H(weights) -> LaurentPoly:
    out = ONE
    for i, j in weights:
        if (i, j) == (0, 0):
            raise ValueError("zero weight has vanishing cohomological Euler class")
        out = out * linear_form(i, j)
    return out


def k_roots(lam: Partition) -> list[LaurentPoly]:
    return [LaurentPoly.monomial(i, j) for i, j in lam.boxes()]


def h_roots(lam: Partition) -> list[LaurentPoly]:
    return [linear_form(i, j) for i, j in lam.boxes()]


def _k_power(r: LaurentPoly, k: int) -> LaurentPoly:
    ((a, b), _), = r.terms.items()
    return LaurentPoly.monomial(a * k, b * k)


@dataclass(frozen=True)
class EquivClass:
    """Restrictions of a class to every torus-fixed point of Hilb^n."""

    theory: str
    torus: str
    n: int
    restrictions: Mapping[Partition, LaurentPoly] = field(compare=True)

    def __post_init__(self):
        if self.theory not in THEORIES or self.torus not in TORI:
            raise ValueError(f"bad theory/torus {self.theory}/{self.torus}")
        parts = enumerate_partitions(self.n)
        if set(self.restrictions) != set(parts):
            raise ValueError(f"restrictions must cover every partition of {self.n}")

    @classmethod
    def build(cls, theory, torus, n, fn: Callable[[Partition], LaurentPoly]) -> "EquivClass":
        return cls(theory, torus, n, {lam: LaurentPoly.coerce(fn(lam)) for lam in enumerate_partitions(n)})

    @classmethod
    def unit(cls, theory, n, torus="T") -> "EquivClass":
        return cls.build(theory, torus, n, lambda lam: ONE)

    def __getitem__(self, lam) -> LaurentPoly:
        return self.restrictions[lam if isinstance(lam, Partition) else Partition(lam)]

    def partitions(self):
        return enumerate_partitions(self.n)

    def _same_space(self, other: "EquivClass"):
        if (self.theory, self.torus, self.n) != (other.theory, other.torus, other.n):
            raise ValueError("classes live in different spaces")

    def map(self, fn) -> "EquivClass":
        return EquivClass(self.theory, self.torus, self.n, {lam: fn(v) for lam, v in self.restrictions.items()})

    def __add__(self, other):
        if isinstance(other, EquivClass):
            self._same_space(other)
            return EquivClass(self.theory, self.torus, self.n,
                              {lam: v + other.restrictions[lam] for lam, v in self.restrictions.items()})
        return self.map(lambda v: v + other)

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, EquivClass):
            self._same_space(other)
            return EquivClass(self.theory, self.torus, self.n,
                              {lam: v * other.restrictions[lam] for lam, v in self.restrictions.items()})
        return self.map(lambda v: v * other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.restrictions.values())

    def to_json(self) -> dict:
        return {
            "theory": self.theory,
            "torus": self.torus,
            "n": self.n,
            "restrictions": {str(lam): v.to_records() for lam, v in self.restrictions.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "EquivClass":
        return cls(data["theory"], data["torus"], int(data["n"]),
                   {Partition.parse(k): LaurentPoly.from_records(v) for k, v in data["restrictions"].items()})


def kirwan_K(expr: SymExpr, n: int) -> EquivClass:
    """Evaluate ``expr`` on the box monomials ``q^i t^j`` at every fixed point."""
    return EquivClass.build("K", "T", n, lambda lam: symfunc.evaluate(expr, k_roots(lam), ONE, _k_power))


def kirwan_H(expr: SymExpr, n: int) -> EquivClass:
    """Evaluate ``expr`` on the Chern roots ``i q + j t`` at every fixed point."""
    if any(kind == "p" and k < 0 for kind, k in expr.generators()):
        raise ValueError("negative power sums have no cohomological Kirwan image")
    return EquivClass.build("H", "T", n, lambda lam: symfunc.evaluate(expr, h_roots(lam), ONE))


def specialize_class(cl: EquivClass, target: str) -> EquivClass:
    """Restrict to the subtorus ``Ty`` or forget the torus entirely.

    K: ``Ty`` sets ``q = 1``; H: ``Ty`` sets ``q = 0``.  ``NONE`` is only
    allowed when every restriction is constant after the substitution
    (degree-zero data); otherwise naive evaluation would be unsound.
    """
    if target not in ("Ty", "NONE"):
        raise ValueError(f"unknown target torus {target!r}")
    qv = 1 if cl.theory == "K" else 0
    out = cl.map(lambda v: v.specialize(qv, KEEP))
    if target == "Ty":
        return EquivClass(cl.theory, "Ty", cl.n, out.restrictions)
    if not all(v.is_constant() for v in out.restrictions.values()):
        raise ValueError("nonequivariant restriction tuples are only meaningful in degree zero; "
                         "use operators.nonequiv_reduce")
    return EquivClass(cl.theory, "NONE", cl.n, out.restrictions)


def nested_points(n: int) -> list[tuple[Partition, Box]]:
    """Fixed points of Hilb^{n,n+1}: a partition of ``n+1`` and one of its corners."""
    return [(lam, c) for lam in enumerate_partitions(n + 1) for c in corners(lam)]


__all__ = [
    "EquivClass", "tangent_weights_hilb", "tangent_weights_nested", "nested_weight_table",
    "euler_K", "euler_H", "kirwan_K", "kirwan_H", "specialize_class", "nested_points",
    "linear_form", "remove_box",
]
