"""Constructions on simplicial complexes: simplices, spheres, staircase
products, cones, gluing, disjoint unions and barycentric subdivision."""

from __future__ import annotations

from itertools import combinations, permutations

from .simplicial import Simplex, SimplicialComplex, Vertex, as_vertex


class GlueError(ValueError):
    pass


def point() -> SimplicialComplex:
    return SimplicialComplex([[0]])


def simplex(n: int) -> SimplicialComplex:
    """The standard n-simplex on vertices 0..n."""
    return SimplicialComplex([range(n + 1)])


def sphere(n: int) -> SimplicialComplex:
    """The n-sphere as the boundary of the (n+1)-simplex."""
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    return SimplicialComplex(combinations(range(n + 2), n + 1))


def staircase(s: Simplex, t: Simplex) -> list[tuple[int, Simplex]]:
    """Signed top simplices of the staircase triangulation of ``s x t``.

    Each monotone lattice path from ``(0, 0)`` to ``(p, q)`` gives one
    simplex. The sign is that of the shuffle: ``(-1)`` to the number of
    (t-step, s-step) pairs with the t-step first.
    """
    p, q = len(s) - 1, len(t) - 1
    out = []
    for ups in combinations(range(p + q), q):
        ups_set = set(ups)
        i = j = 0
        verts = [s[0] + t[0]]
        inversions = 0
        seen_ups = 0
        for step in range(p + q):
            if step in ups_set:
                j += 1
                seen_ups += 1
            else:
                i += 1
                inversions += seen_ups
            verts.append(s[i] + t[j])
        out.append((-1 if inversions & 1 else 1, tuple(verts)))
    return out


def product(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of ``|K1| x |K2|`` with concatenated labels."""
    tops = []
    for s in K1.maximal_simplices():
        for t in K2.maximal_simplices():
            tops.extend(simp for _, simp in staircase(s, t))
    return SimplicialComplex(tops)


def product_all(factors: list[SimplicialComplex]) -> SimplicialComplex:
    if not factors:
        raise ValueError("empty product")
    out = factors[0]
    for K in factors[1:]:
        out = product(out, K)
    return out


def apex_for(K: SimplicialComplex) -> Vertex:
    """A vertex ordered after every vertex of ``K``."""
    top = max((v[0] for v in K.vertices), default=-1)
    return (top + 1,) + (0,) * (K.arity - 1)


def cone(K: SimplicialComplex) -> SimplicialComplex:
    apex = apex_for(K)
    return SimplicialComplex([s + (apex,) for s in K.maximal_simplices()] or [[apex]])


def shift(K: SimplicialComplex, offset: int) -> SimplicialComplex:
    return K.relabel(lambda v: (v[0] + offset,) + v[1:])


def disjoint_union(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if K1.arity != K2.arity:
        raise ValueError("cannot join complexes with different label arity")
    offset = max((v[0] for v in K1.vertices), default=-1) + 1 - min((v[0] for v in K2.vertices), default=0)
    return SimplicialComplex(K1.maximal_simplices() + shift(K2, offset).maximal_simplices())


def normalize_labels(K: SimplicialComplex) -> SimplicialComplex:
    """Relabel vertices to ``(0,), (1,), ...`` preserving their order."""
    return K.relabel({v: (i,) for i, v in enumerate(K.vertices)})


def glue(
    K1: SimplicialComplex,
    L1: SimplicialComplex,
    K2: SimplicialComplex,
    L2: SimplicialComplex,
    phi: dict,
) -> SimplicialComplex:
    """Pushout of ``K1 <- L1 ~ L2 -> K2`` along the vertex bijection ``phi``.

    ``phi`` maps the vertices of ``L2`` to those of ``L1`` and must induce
    a simplicial isomorphism. Vertices of ``K2`` outside ``L2`` keep their
    labels unless they clash with ``K1``, in which case all of them are
    shifted past ``K1`` in the first coordinate.
    """
    if K1.arity != K2.arity:
        raise GlueError("label arity differs between the two complexes")
    if not L1.is_subcomplex_of(K1):
        raise GlueError("L1 is not a subcomplex of K1")
    if not L2.is_subcomplex_of(K2):
        raise GlueError("L2 is not a subcomplex of K2")
    phi = {as_vertex(a): as_vertex(b) for a, b in phi.items()}
    v2, v1 = set(L2.vertices), set(L1.vertices)
    if set(phi) != v2:
        raise GlueError(f"phi is defined on {len(phi)} vertices but L2 has {len(v2)}")
    if len(set(phi.values())) != len(phi):
        raise GlueError("phi is not injective")
    if set(phi.values()) != v1:
        raise GlueError("phi does not map onto the vertices of L1")
    for s in L2:
        img = tuple(sorted(phi[v] for v in s))
        if img not in L1:
            raise GlueError(f"phi is not simplicial: {s} maps to {img}, not a simplex of L1")
    if len(L1) != len(L2):
        raise GlueError(f"L1 has {len(L1)} simplices but L2 has {len(L2)}")

    others = [v for v in K2.vertices if v not in v2]
    k1_vertices = set(K1.vertices)
    mapping = dict(phi)
    if any(v in k1_vertices for v in others):
        offset = max(v[0] for v in K1.vertices) + 1 - min(v[0] for v in others)
        for v in others:
            mapping[v] = (v[0] + offset,) + v[1:]
    else:
        for v in others:
            mapping[v] = v

    for s in K2:
        if s in L2 or not all(v in v2 for v in s):
            continue
        img = tuple(sorted(mapping[v] for v in s))
        if img in K1:
            raise GlueError(f"pushout is not simplicial: {s} would be identified with {img} of K1")
    tops = K1.maximal_simplices() + [tuple(sorted(mapping[v] for v in s)) for s in K2.maximal_simplices()]
    return SimplicialComplex(tops)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision; the vertex for a simplex ``s`` is
    labelled by the position of ``s`` in the (dim, lexicographic) order."""
    label = {}
    for k in range(K.dim + 1):
        for s in K.simplices(k):
            label[s] = (len(label),)
    tops = []
    for s in K.maximal_simplices():
        for perm in permutations(s):
            tops.append([label[tuple(sorted(perm[: i + 1]))] for i in range(len(perm))])
    return SimplicialComplex(tops)
