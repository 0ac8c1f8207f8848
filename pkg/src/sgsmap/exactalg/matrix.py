"""Sparse integer matrices and the coefficient rings they are read over."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class Ring(enum.Enum):
    """Coefficient rings supported by the kernel."""

    Z = "Z"
    Z2 = "Z2"

    def reduce(self, value: int) -> int:
        return value & 1 if self is Ring.Z2 else value

    @classmethod
    def parse(cls, text: str) -> "Ring":
        key = text.strip().upper().replace("/", "").replace("Z2Z", "Z2")
        if key in ("Z", "ZZ"):
            return cls.Z
        if key in ("Z2", "F2", "GF2"):
            return cls.Z2
        raise ValueError(f"unknown coefficient ring {text!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class IntMatrix:
    """Immutable sparse integer matrix.

    ``entries`` maps ``(row, col)`` to a nonzero integer. Zero entries are
    dropped on construction so equality is structural.
    """

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v:
                clean[(r, c)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        data = [list(row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
        return cls(len(data), cols, {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row) if v})

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Mapping[int, int]]) -> "IntMatrix":
        entries = {}
        ncols = 0
        for c, col in enumerate(columns):
            ncols = c + 1
            for r, v in col.items():
                entries[(r, c)] = v
        return cls(rows, ncols, entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def mod2(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {k: v & 1 for k, v in self.entries.items()})

    def over(self, ring: Ring) -> "IntMatrix":
        return self.mod2() if ring is Ring.Z2 else self

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return IntMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Multiply by a sparse column vector given as ``{index: value}``."""
        out: dict[int, int] = {}
        cols = self.columns()
        for c, x in vec.items():
            if x:
                for r, v in cols[c].items():
                    out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def submatrix(self, rows: range | list[int], cols: range | list[int]) -> "IntMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        return IntMatrix(
            len(rmap),
            len(cmap),
            {(rmap[r], cmap[c]): v for (r, c), v in self.entries.items() if r in rmap and c in cmap},
        )

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_dense()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
