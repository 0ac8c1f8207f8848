"""Bitset linear algebra over Z/2 for large boundary matrices.

A column is a Python int whose bit ``i`` is the entry in row ``i``. XOR is
addition, and the highest set bit serves as the pivot of a column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


def bits_from_indices(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def indices_from_bits(v: int) -> list[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


@dataclass
class Echelon:
    """A subspace of GF(2)^n in pivot-reduced form."""

    pivots: dict[int, int] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            p = pivots.get(v.bit_length() - 1)
            if p is None:
                return v
            v ^= p
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def copy(self) -> "Echelon":
        return Echelon(dict(self.pivots))


@dataclass
class ColumnReduction:
    """Result of reducing the columns of one boundary matrix."""

    image: Echelon
    pivot_rows: set[int]
    kernel: list[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.image.rank


def reduce_columns(columns: list[int], skip: set[int] | None = None, track: bool = False) -> ColumnReduction:
    """Column-reduce a matrix given as bitset columns.

    ``skip`` lists columns known to reduce to zero (they still count toward
    the kernel when ``track`` is set, but are not reduced). With ``track``,
    the kernel basis is returned as bitsets over column indices.
    """
    image = Echelon()
    pivots = image.pivots
    kernel = []
    if not track:
        for j, col in enumerate(columns):
            if skip and j in skip:
                continue
            while col:
                low = col.bit_length() - 1
                p = pivots.get(low)
                if p is None:
                    pivots[low] = col
                    break
                col ^= p
        return ColumnReduction(image, set(pivots))

    sources: dict[int, int] = {}
    for j, col in enumerate(columns):
        t = 1 << j
        while col:
            low = col.bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = col
                sources[low] = t
                break
            col ^= p
            t ^= sources[low]
        if not col:
            kernel.append(t)
    return ColumnReduction(image, set(pivots), kernel)


def rank(columns: list[int]) -> int:
    return reduce_columns(columns).rank
