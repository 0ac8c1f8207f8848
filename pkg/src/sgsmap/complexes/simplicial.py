"""Finite abstract simplicial complexes with a global vertex order.

Vertices are tuples of ints of one fixed length (the complex's *arity*);
the total order is tuple comparison. Products concatenate labels, so the
lexicographic order of a product is the product order the staircase
triangulation needs, and iterated products are associative on the nose.
A simplex is the sorted tuple of its vertices.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

Vertex = tuple[int, ...]
Simplex = tuple[Vertex, ...]


def as_vertex(v) -> Vertex:
    if isinstance(v, tuple):
        return tuple(int(x) for x in v)
    return (int(v),)


def as_simplex(s: Iterable) -> Simplex:
    return tuple(sorted({as_vertex(v) for v in s}))


def facets_of(s: Simplex) -> list[Simplex]:
    """Codimension-one faces, in the order of the omitted vertex."""
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


class SimplicialComplex:
    """Immutable simplicial complex, closed under taking faces."""

    __slots__ = ("_by_dim", "_sorted", "_index", "_arity", "_hash")

    def __init__(self, simplices: Iterable[Iterable] = ()):
        tops: set[Simplex] = set()
        for s in simplices:
            s = as_simplex(s)
            if s:
                tops.add(s)
        arities = {len(v) for s in tops for v in s}
        if len(arities) > 1:
            raise ValueError(f"vertex labels of mixed length {sorted(arities)}")
        self._arity = arities.pop() if arities else 1
        by_dim: dict[int, set[Simplex]] = {}
        for s in tops:
            by_dim.setdefault(len(s) - 1, set()).add(s)
        top = max(by_dim, default=-1)
        for k in range(top, 0, -1):
            below = by_dim.setdefault(k - 1, set())
            for s in by_dim.get(k, ()):
                below.update(facets_of(s))
        self._by_dim = {k: frozenset(v) for k, v in by_dim.items() if v}
        self._sorted: dict[int, list[Simplex]] = {}
        self._index: dict[int, dict[Simplex, int]] = {}
        self._hash = None

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def vertices(self) -> list[Vertex]:
        return [s[0] for s in self.simplices(0)]

    def simplices(self, k: int) -> list[Simplex]:
        """k-simplices in sorted order; this order indexes chain vectors."""
        got = self._sorted.get(k)
        if got is None:
            got = sorted(self._by_dim.get(k, ()))
            self._sorted[k] = got
        return got

    def simplex_set(self, k: int) -> frozenset[Simplex]:
        return self._by_dim.get(k, frozenset())

    def index(self, k: int) -> dict[Simplex, int]:
        got = self._index.get(k)
        if got is None:
            got = {s: i for i, s in enumerate(self.simplices(k))}
            self._index[k] = got
        return got

    def count(self, k: int) -> int:
        return len(self._by_dim.get(k, ()))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.count(k) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_dim.values())

    def __iter__(self) -> Iterator[Simplex]:
        for k in range(self.dim + 1):
            yield from self.simplices(k)

    def __contains__(self, s) -> bool:
        s = as_simplex(s)
        return s in self._by_dim.get(len(s) - 1, ())

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._by_dim == other._by_dim

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._by_dim.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    def maximal_simplices(self) -> list[Simplex]:
        out = []
        for k in range(self.dim, -1, -1):
            covered = set()
            for s in self._by_dim.get(k + 1, ()):
                covered.update(facets_of(s))
            out.extend(s for s in self.simplices(k) if s not in covered)
        return sorted(out, key=lambda s: (-len(s), s))

    def is_pure(self) -> bool:
        return all(len(s) == self.dim + 1 for s in self.maximal_simplices())

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(v <= other._by_dim.get(k, frozenset()) for k, v in self._by_dim.items())

    # -- derived complexes ---------------------------------------------

    def subcomplex(self, simplices: Iterable[Iterable]) -> "SimplicialComplex":
        sub = SimplicialComplex(simplices)
        if not sub.is_subcomplex_of(self):
            raise ValueError("simplices are not all in the complex")
        return sub

    def full_subcomplex(self, vertices: Iterable) -> "SimplicialComplex":
        keep = {as_vertex(v) for v in vertices}
        return SimplicialComplex(s for s in self if all(v in keep for v in s))

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(s for j in range(min(k, self.dim) + 1) for s in self.simplices(j))

    def facet_incidence(self) -> dict[Simplex, list[Simplex]]:
        """Map each codimension-one face to the top simplices containing it."""
        d = self.dim
        inc: dict[Simplex, list[Simplex]] = {}
        for s in self.simplices(d):
            for f in facets_of(s):
                inc.setdefault(f, []).append(s)
        return inc

    def boundary(self) -> "SimplicialComplex":
        """Faces of codimension one lying in exactly one top simplex (closed)."""
        inc = self.facet_incidence()
        return SimplicialComplex(f for f, tops in inc.items() if len(tops) == 1)

    def components(self) -> list["SimplicialComplex"]:
        """Connected components, ordered by least vertex."""
        parent: dict[Vertex, Vertex] = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.simplices(1):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[Vertex, list[Simplex]] = {}
        for s in self.maximal_simplices():
            groups.setdefault(find(s[0]), []).append(s)
        return [SimplicialComplex(groups[r]) for r in sorted(groups)]

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def delete_open_star(self, v) -> "SimplicialComplex":
        v = as_vertex(v)
        return SimplicialComplex(s for s in self if v not in s)

    def link(self, v) -> "SimplicialComplex":
        v = as_vertex(v)
        return SimplicialComplex(tuple(w for w in s if w != v) for s in self if v in s and len(s) > 1)

    def relabel(self, mapping) -> "SimplicialComplex":
        """Apply a vertex map (dict or callable); it must be injective."""
        f = mapping.get if isinstance(mapping, dict) else mapping
        image = {}
        for v in self.vertices:
            w = as_vertex(f(v))
            if w in image.values():
                raise ValueError(f"relabeling is not injective at {v}")
            image[v] = w
        return SimplicialComplex(tuple(image[v] for v in s) for s in self.maximal_simplices())


# -- text serialization ------------------------------------------------


def _fmt_vertex(v: Vertex) -> str:
    return ".".join(str(x) for x in v)


def _parse_vertex(tok: str) -> Vertex:
    return tuple(int(x) for x in tok.split("."))


def to_text(K: SimplicialComplex, comments: Sequence[str] = ()) -> str:
    lines = [f"dim {K.dim}"]
    lines += [f"# {c}" for c in comments]
    lines += [" ".join(_fmt_vertex(v) for v in s) for s in K.maximal_simplices()]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> SimplicialComplex:
    """Parse the line format written by :func:`to_text`.

    Comment lines start with ``#``. The header must agree with the
    dimension of the parsed complex.
    """
    header = None
    tops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ValueError(f"line {lineno}: expected header 'dim <d>', got {raw!r}")
            header = int(parts[1])
            continue
        try:
            tops.append(tuple(_parse_vertex(t) for t in line.split()))
        except ValueError:
            raise ValueError(f"line {lineno}: bad vertex label in {raw!r}") from None
    if header is None:
        raise ValueError("missing 'dim' header")
    K = SimplicialComplex(tops)
    if K.dim != header:
        raise ValueError(f"header says dim {header} but simplices give dim {K.dim}")
    return K
