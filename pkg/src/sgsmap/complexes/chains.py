"""Chain complexes of simplicial complexes, homology, and chain-level
operations (boundary, cross product)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..exactalg import FGModule, HomologyGroup, IntMatrix, Ring, homology_of_pair
from ..exactalg import gf2
from .constructions import staircase
from .simplicial import Simplex, SimplicialComplex

Chain = dict[Simplex, int]


class ChainComplex:
    """Simplicial chain complex with incidence signs from the vertex order.

    ``boundary(k)`` is the matrix of ``C_k -> C_{k-1}``; rows and columns
    follow ``K.simplices(k-1)`` and ``K.simplices(k)``. When ``exclude`` is
    given the complex is the quotient ``C(K) / C(exclude)``.
    """

    def __init__(self, K: SimplicialComplex, exclude: SimplicialComplex | None = None, check: bool = True):
        self.K = K
        self.exclude = exclude
        self._basis: dict[int, list[Simplex]] = {}
        self._index: dict[int, dict[Simplex, int]] = {}
        self._boundary: dict[int, IntMatrix] = {}
        if check and K.dim <= 8:
            for k in range(2, K.dim + 1):
                if not (self.boundary(k - 1) @ self.boundary(k)).is_zero():
                    raise AssertionError(f"boundary squared is nonzero in degree {k}")

    @property
    def dim(self) -> int:
        return self.K.dim

    def basis(self, k: int) -> list[Simplex]:
        got = self._basis.get(k)
        if got is None:
            got = self.K.simplices(k)
            if self.exclude is not None:
                drop = self.exclude.simplex_set(k)
                got = [s for s in got if s not in drop]
            self._basis[k] = got
        return got

    def index(self, k: int) -> dict[Simplex, int]:
        got = self._index.get(k)
        if got is None:
            got = {s: i for i, s in enumerate(self.basis(k))}
            self._index[k] = got
        return got

    def rank(self, k: int) -> int:
        return len(self.basis(k))

    def boundary(self, k: int) -> IntMatrix:
        got = self._boundary.get(k)
        if got is not None:
            return got
        cols = self.basis(k)
        rows = self.index(k - 1) if k >= 1 else {}
        entries = {}
        if k >= 1:
            for j, s in enumerate(cols):
                for i in range(len(s)):
                    r = rows.get(s[:i] + s[i + 1 :])
                    if r is not None:
                        entries[(r, j)] = -1 if i & 1 else 1
        got = IntMatrix(len(rows) if k >= 1 else 0, len(cols), entries)
        self._boundary[k] = got
        return got

    def boundary_bits(self, k: int) -> list[int]:
        """Columns of the mod-2 boundary matrix as bitsets."""
        rows = self.index(k - 1)
        out = []
        for s in self.basis(k):
            v = 0
            for i in range(len(s)):
                r = rows.get(s[:i] + s[i + 1 :])
                if r is not None:
                    v ^= 1 << r
            out.append(v)
        return out

    def vector(self, k: int, chain: Mapping[Simplex, int]) -> dict[int, int]:
        idx = self.index(k)
        out = {}
        for s, c in chain.items():
            if c:
                i = idx.get(s)
                if i is None:
                    if self.exclude is not None and s in self.exclude:
                        continue
                    raise KeyError(f"{s} is not a {k}-simplex of the complex")
                out[i] = c
        return out

    def bits(self, k: int, chain: Mapping[Simplex, int]) -> int:
        return gf2.bits_from_indices(i for i, c in self.vector(k, chain).items() if c & 1)

    def chain(self, k: int, vector: Mapping[int, int]) -> Chain:
        basis = self.basis(k)
        return {basis[i]: c for i, c in vector.items() if c}


def chain_complex(K: SimplicialComplex) -> ChainComplex:
    if not K.vertices:
        raise ValueError("empty complex")
    return ChainComplex(K)


@dataclass
class GradedHomology:
    """Homology (or cohomology) in every degree ``0..dim`` with representatives."""

    chains: ChainComplex
    groups: list[HomologyGroup]
    ring: Ring
    cohomology: bool = False

    @property
    def modules(self) -> tuple[FGModule, ...]:
        return tuple(g.module for g in self.groups)

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(g.module.free_rank for g in self.groups)

    @property
    def torsion(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.module.torsion for g in self.groups)

    def __getitem__(self, k: int) -> HomologyGroup:
        return self.groups[k]

    def representatives(self, k: int) -> list[Chain]:
        """Free generators of degree k as simplex chains."""
        return [self.chains.chain(k, g) for g in self.groups[k].free_generators]

    def torsion_representatives(self, k: int) -> list[Chain]:
        return [self.chains.chain(k, g) for g in self.groups[k].torsion_generators]

    def coordinates(self, k: int, chain: Mapping[Simplex, int]) -> tuple[list[int], list[int]]:
        return self.groups[k].coordinates(self.chains.vector(k, chain))

    def is_trivial_class(self, k: int, chain: Mapping[Simplex, int]) -> bool:
        t, f = self.coordinates(k, chain)
        return not any(t) and not any(f)

    def span_rank(self, k: int, chains: list[Mapping[Simplex, int]]) -> int:
        """Rank of the free part of the span of some k-cycle classes."""
        return self.groups[k].span_rank([self.chains.vector(k, c) for c in chains])


def _graded(cc: ChainComplex, coeff: Ring, top: int | None = None) -> GradedHomology:
    top = cc.dim if top is None else top
    groups = []
    for k in range(top + 1):
        d_in = cc.boundary(k + 1) if k + 1 <= cc.dim else IntMatrix(cc.rank(k), 0)
        d_out = cc.boundary(k) if k >= 1 else IntMatrix(0, cc.rank(0))
        groups.append(homology_of_pair(d_in, d_out, coeff))
    return GradedHomology(cc, groups, coeff)


def homology(K: SimplicialComplex, coeff: Ring = Ring.Z) -> GradedHomology:
    """Homology of ``K`` in degrees ``0..dim K`` with cycle representatives."""
    return _graded(ChainComplex(K), coeff)


def relative_homology(K: SimplicialComplex, L: SimplicialComplex, coeff: Ring = Ring.Z) -> GradedHomology:
    """Homology of the pair ``(K, L)`` from the quotient chain complex."""
    if not L.is_subcomplex_of(K):
        raise ValueError("L is not a subcomplex of K")
    return _graded(ChainComplex(K, exclude=L), coeff)


def cohomology(K: SimplicialComplex, coeff: Ring = Ring.Z, exclude: SimplicialComplex | None = None) -> GradedHomology:
    """Cohomology with cocycle representatives (vectors over k-simplices)."""
    cc = ChainComplex(K, exclude=exclude)
    groups = []
    for k in range(cc.dim + 1):
        # delta^{k-1} = boundary(k)^T maps into C^k; delta^k = boundary(k+1)^T out of it.
        d_in = cc.boundary(k).transpose() if k >= 1 else IntMatrix(cc.rank(0), 0)
        d_out = cc.boundary(k + 1).transpose() if k + 1 <= cc.dim else IntMatrix(0, cc.rank(k))
        groups.append(homology_of_pair(d_in, d_out, coeff))
    return GradedHomology(cc, groups, coeff, cohomology=True)


# -- mod 2 ranks for large complexes -------------------------------------


@dataclass
class Mod2Homology:
    """Betti numbers over Z/2 plus the reduced image of every boundary map,
    enough to decide whether a cycle is a boundary."""

    chains: ChainComplex
    betti: tuple[int, ...]
    images: dict[int, gf2.Echelon]

    def is_cycle(self, k: int, chain: Mapping[Simplex, int]) -> bool:
        return not boundary_of(chain, Ring.Z2)

    def span_rank(self, k: int, chains: list[Mapping[Simplex, int]]) -> int:
        """Rank of the classes of the given k-cycles in H_k(K; Z/2)."""
        ech = self.images[k + 1].copy() if k + 1 in self.images else gf2.Echelon()
        base = ech.rank
        for c in chains:
            ech.add(self.chains.bits(k, c))
        return ech.rank - base


def mod2_homology(K: SimplicialComplex, exclude: SimplicialComplex | None = None, budget: int | None = None) -> Mod2Homology:
    """Z/2 Betti numbers by bitset column reduction, top degree first.

    A column whose simplex was the pivot of a reduced column one degree up
    is known to reduce to zero and is skipped.
    """
    cc = ChainComplex(K, exclude=exclude, check=False)
    d = cc.dim
    if budget is not None:
        for k in range(d + 1):
            if cc.rank(k) > budget:
                raise BudgetExceeded(k, cc.rank(k), budget)
    ranks = {0: 0, d + 1: 0}
    images: dict[int, gf2.Echelon] = {}
    cleared: set[int] = set()
    for k in range(d, 0, -1):
        red = gf2.reduce_columns(cc.boundary_bits(k), skip=cleared)
        ranks[k] = red.rank
        images[k] = red.image
        cleared = red.pivot_rows
    betti = tuple(cc.rank(k) - ranks[k] - ranks[k + 1] for k in range(d + 1))
    return Mod2Homology(cc, betti, images)


class BudgetExceeded(RuntimeError):
    def __init__(self, degree: int, size: int, budget: int):
        super().__init__(f"{size} simplices in degree {degree} exceed the budget of {budget}")
        self.degree = degree
        self.size = size
        self.budget = budget


# -- chain-level operations ----------------------------------------------


def clean(chain: Mapping[Simplex, int], coeff: Ring = Ring.Z) -> Chain:
    return {s: coeff.reduce(c) for s, c in chain.items() if coeff.reduce(c)}


def add_chains(a: Mapping[Simplex, int], b: Mapping[Simplex, int], scale: int = 1, coeff: Ring = Ring.Z) -> Chain:
    out = dict(a)
    for s, c in b.items():
        out[s] = out.get(s, 0) + scale * c
    return clean(out, coeff)


def boundary_of(chain: Mapping[Simplex, int], coeff: Ring = Ring.Z) -> Chain:
    out: Chain = {}
    for s, c in chain.items():
        if len(s) < 2:
            continue
        for i in range(len(s)):
            f = s[:i] + s[i + 1 :]
            out[f] = out.get(f, 0) + (-c if i & 1 else c)
    return clean(out, coeff)


def restrict(chain: Mapping[Simplex, int], K: SimplicialComplex) -> Chain:
    return {s: c for s, c in chain.items() if s in K}


def cross(a: Mapping[Simplex, int], b: Mapping[Simplex, int], coeff: Ring = Ring.Z) -> Chain:
    """Eilenberg-Zilber cross product into the staircase product."""
    out: Chain = {}
    for s, x in a.items():
        for t, y in b.items():
            for sign, simp in staircase(s, t):
                out[simp] = out.get(simp, 0) + sign * x * y
    return clean(out, coeff)


def cross_all(chains: Iterable[Mapping[Simplex, int]], coeff: Ring = Ring.Z) -> Chain:
    it = iter(chains)
    out = dict(next(it))
    for c in it:
        out = cross(out, c, coeff)
    return out


def euler_characteristic_from_betti(betti: Iterable[int]) -> int:
    return sum((-1) ** k * b for k, b in enumerate(betti))
