"""Smith normal form over Z and Z/2 with optional unimodular transforms.

Elimination works on a doubly indexed sparse store (row dicts and column
dicts kept in sync). Pivots are chosen by smallest absolute value, ties
broken by ``(row, col)``; a lazy heap keeps that choice cheap. Python ints
are arbitrary precision, so coefficient growth never overflows.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .matrix import IntMatrix, Ring


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ A @ V == S`` with ``S`` diagonal, nonnegative, divisibility chain.

    ``U_inv`` and ``V_inv`` are the inverses of the transforms (kept because
    homology generators and coordinates need them). All four are ``None``
    when the decomposition was computed without transforms.
    """

    S: IntMatrix
    diagonal: tuple[int, ...]
    U: IntMatrix | None = None
    V: IntMatrix | None = None
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None
    ring: Ring = Ring.Z

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diagonal


class _Store:
    """Sparse working copy of a matrix with row and column access."""

    def __init__(self, A: IntMatrix, ring: Ring):
        self.ring = ring
        self.rows: list[dict[int, int]] = [{} for _ in range(A.rows)]
        self.cols: list[dict[int, int]] = [{} for _ in range(A.cols)]
        self.heap: list[tuple[int, int, int]] = []
        for (r, c), v in A.entries.items():
            v = ring.reduce(v)
            if v:
                self.rows[r][c] = v
                self.cols[c][r] = v
                self.heap.append((abs(v), r, c))
        heapq.heapify(self.heap)

    def set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rows[r][c] = v
            self.cols[c][r] = v
            heapq.heappush(self.heap, (abs(v), r, c))
        else:
            self.rows[r].pop(c, None)
            self.cols[c].pop(r, None)

    def add_row(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]"""
        trow = self.rows[target]
        two = self.ring is Ring.Z2
        for c, v in list(self.rows[source].items()):
            new = trow.get(c, 0) + q * v
            self.set(target, c, new & 1 if two else new)

    def add_col(self, target: int, source: int, q: int) -> None:
        """col[target] += q * col[source]"""
        tcol = self.cols[target]
        two = self.ring is Ring.Z2
        for r, v in list(self.cols[source].items()):
            new = tcol.get(r, 0) + q * v
            self.set(r, target, new & 1 if two else new)


class _Transform:
    """A matrix accumulated by row operations, stored as row dicts."""

    def __init__(self, n: int, mod2: bool = False):
        self.rows: list[dict[int, int]] = [{i: 1} for i in range(n)]
        self.mod2 = mod2

    def add_row(self, target: int, source: int, q: int) -> None:
        trow = self.rows[target]
        for c, v in self.rows[source].items():
            new = trow.get(c, 0) + q * v
            if self.mod2:
                new &= 1
            if new:
                trow[c] = new
            else:
                trow.pop(c, None)

    def to_matrix(self, order: list[int], transpose: bool = False) -> IntMatrix:
        n = len(self.rows)
        entries = {}
        for new, old in enumerate(order):
            for c, v in self.rows[old].items():
                entries[(c, new) if transpose else (new, c)] = v
        return IntMatrix(n, n, entries)


def _ring_div(a: int, p: int, ring: Ring) -> int:
    if ring is Ring.Z2:
        return 1
    return a // p


def smith_normal_form(A: IntMatrix, ring: Ring = Ring.Z, transforms: bool = True) -> SNFDecomposition:
    """Compute ``U A V = S``.

    ``transforms=False`` skips the transform bookkeeping, which is much
    cheaper and enough when only invariant factors or the rank are needed.
    Over ``Ring.Z2`` the input is reduced mod 2 first.
    """
    m, n = A.rows, A.cols
    st = _Store(A, ring)
    # U (row ops), U_inv (column ops, stored transposed as rows), V (column
    # ops, stored transposed), V_inv (row ops).
    if transforms:
        two = ring is Ring.Z2
        U, Uinv_t = _Transform(m, two), _Transform(m, two)
        V_t, Vinv = _Transform(n, two), _Transform(n, two)

    def row_op(target: int, source: int, q: int) -> None:
        st.add_row(target, source, q)
        if transforms:
            U.add_row(target, source, q)
            Uinv_t.add_row(source, target, -q)

    def col_op(target: int, source: int, q: int) -> None:
        st.add_col(target, source, q)
        if transforms:
            V_t.add_row(target, source, q)
            Vinv.add_row(source, target, -q)

    active_r = [True] * m
    active_c = [True] * n
    pivots: list[tuple[int, int, int]] = []
    heap = st.heap
    while heap:
        a, r, c = heapq.heappop(heap)
        if not (active_r[r] and active_c[c]) or abs(st.rows[r].get(c, 0)) != a:
            continue
        while True:
            p = st.rows[r][c]
            clean = True
            for i in sorted(st.cols[c]):
                if i == r:
                    continue
                q = _ring_div(st.rows[i][c], p, ring)
                row_op(i, r, -q)
                if st.rows[i].get(c):
                    clean = False
            for j in sorted(st.rows[r]):
                if j == c:
                    continue
                q = _ring_div(st.rows[r][j], p, ring)
                col_op(j, c, -q)
                if st.rows[r].get(j):
                    clean = False
            if clean:
                break
            # a smaller remainder appeared in the pivot row or column
            cands = [(abs(v), i, c) for i, v in st.cols[c].items()]
            cands += [(abs(v), r, j) for j, v in st.rows[r].items()]
            _, r, c = min(cands)
        pivots.append((r, c, st.rows[r][c]))
        active_r[r] = False
        active_c[c] = False

    # Bring pivots to the leading diagonal positions.
    row_order = [r for r, _, _ in pivots] + [r for r in range(m) if active_r[r]]
    col_order = [c for _, c, _ in pivots] + [c for c in range(n) if active_c[c]]
    diag = [v for _, _, v in pivots]

    if not transforms:
        diag = _fix_chain(diag, None)
        S = IntMatrix(m, n, {(i, i): d for i, d in enumerate(diag)})
        return SNFDecomposition(S, tuple(diag), ring=ring)

    # Permuted transforms as row-dict stores in the new index order.
    Ur = _Transform(0)
    Ur.rows = [U.rows[r] for r in row_order]
    Ui = _Transform(0)
    Ui.rows = [Uinv_t.rows[r] for r in row_order]
    Vt = _Transform(0)
    Vt.rows = [V_t.rows[c] for c in col_order]
    Vi = _Transform(0)
    Vi.rows = [Vinv.rows[c] for c in col_order]
    diag = _fix_chain(diag, (Ur, Ui, Vt, Vi))

    S = IntMatrix(m, n, {(i, i): d for i, d in enumerate(diag)})
    ident_m = list(range(m))
    ident_n = list(range(n))
    return SNFDecomposition(
        S,
        tuple(diag),
        U=Ur.to_matrix(ident_m),
        V=Vt.to_matrix(ident_n, transpose=True),
        U_inv=Ui.to_matrix(ident_m, transpose=True),
        V_inv=Vi.to_matrix(ident_n),
        ring=ring,
    )


def _combine(t: _Transform, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    """rows (i, j) <- [[a, b], [c, d]] @ rows (i, j)"""
    ri, rj = t.rows[i], t.rows[j]
    keys = set(ri) | set(rj)
    ni, nj = {}, {}
    for k in keys:
        x, y = ri.get(k, 0), rj.get(k, 0)
        u, w = a * x + b * y, c * x + d * y
        if u:
            ni[k] = u
        if w:
            nj[k] = w
    t.rows[i], t.rows[j] = ni, nj


def _scale(t: _Transform, i: int, s: int) -> None:
    t.rows[i] = {k: s * v for k, v in t.rows[i].items()}


def _fix_chain(diag: list[int], ts) -> list[int]:
    """Make the diagonal nonnegative and enforce d1 | d2 | ..."""
    diag = list(diag)
    for i, d in enumerate(diag):
        if d < 0:
            diag[i] = -d
            if ts:
                Ur, Ui, _, _ = ts
                _scale(Ur, i, -1)
                _scale(Ui, i, -1)
    k = len(diag)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _egcd(a, b)
            diag[i], diag[j] = g, a * b // g
            if ts:
                Ur, Ui, Vt, Vi = ts
                # U rows:   [[s, t], [-b/g, a/g]]
                _combine(Ur, i, j, s, t, -b // g, a // g)
                # U_inv columns: U_inv <- U_inv @ [[a/g, -t], [b/g, s]]
                _combine(Ui, i, j, a // g, b // g, -t, s)
                # V columns: V <- V @ [[1, -t b/g], [1, s a/g]]
                _combine(Vt, i, j, 1, 1, -t * b // g, s * a // g)
                # V_inv rows: [[s a/g, t b/g], [-1, 1]]
                _combine(Vi, i, j, s * a // g, t * b // g, -1, 1)
    return diag


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b) > 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def rank(A: IntMatrix, ring: Ring = Ring.Z) -> int:
    return smith_normal_form(A, ring, transforms=False).rank


class NotUnimodularError(ValueError):
    pass


def unimodular_inverse(A: IntMatrix, ring: Ring = Ring.Z) -> IntMatrix:
    """Inverse of a square matrix invertible over the ring."""
    if A.rows != A.cols:
        raise NotUnimodularError(f"{A.rows}x{A.cols} matrix is not square")
    d = smith_normal_form(A, ring)
    if d.rank != A.rows or any(x != 1 for x in d.diagonal):
        raise NotUnimodularError(f"invariant factors {d.diagonal} of a {A.rows}x{A.cols} matrix")
    return (d.V @ d.U).over(ring)
