"""Partitions, Young diagrams and the box combinatorics used by localization.

A partition is stored as its column lengths ``(λ1 >= λ2 >= ...)``.  The box
``(i, j)`` sits in column ``i`` and row ``j``; it corresponds to the monomial
``q^i t^j``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, NamedTuple


class Box(NamedTuple):
    i: int  # column
    j: int  # row


class ArmLeg(NamedTuple):
    a: int
    b: int


class Partition(tuple):
    """Immutable non-increasing tuple of positive column lengths."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        return cls(int(p) for p in text.split(","))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    @property
    def n(self) -> int:
        return sum(self)

    def __contains__(self, box) -> bool:  # type: ignore[override]
        i, j = box
        return 0 <= i < len(self) and 0 <= j < self[i]

    def row_length(self, j: int) -> int:
        """Number of boxes in row ``j``."""
        return sum(1 for p in self if p > j)

    def boxes(self) -> Iterator[Box]:
        for i, p in enumerate(self):
            for j in range(p):
                yield Box(i, j)


def arm_leg(lam: Partition, box) -> ArmLeg:
    """Arm (boxes strictly right in the same row) and leg (strictly above)."""
    i, j = box
    if (i, j) not in lam:
        raise ValueError(f"box {tuple(box)} is not in the diagram of {lam!r}")
    return ArmLeg(lam.row_length(j) - i - 1, lam[i] - j - 1)


def corners(lam: Partition) -> list[Box]:
    """Boxes with zero arm and leg, from the uppermost to the lowest."""
    out = [Box(i, p - 1) for i, p in enumerate(lam) if i + 1 == len(lam) or lam[i + 1] < p]
    return out  # column order is already decreasing in row index


def add_box_set(lam: Partition) -> list[tuple[Partition, Box]]:
    """Every partition in λ[1] together with the box that was added."""
    out = []
    for i in range(len(lam) + 1):
        height = lam[i] if i < len(lam) else 0
        if i == 0 or lam[i - 1] > height:
            parts = list(lam) + ([0] if i == len(lam) else [])
            parts[i] += 1
            out.append((Partition(parts), Box(i, height)))
    return out


def remove_box(lam: Partition, corner) -> Partition:
    i, j = corner
    if corner not in corners(lam):
        raise ValueError(f"{tuple(corner)} is not a corner of {lam!r}")
    parts = list(lam)
    parts[i] -= 1
    return Partition(p for p in parts if p)


def remove_first_column(lam: Partition) -> Partition:
    if not lam:
        raise ValueError("the empty partition has no first column")
    return Partition(lam[1:])


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(Partition(p) for p in gen(n, n))
