"""Base manifold catalog.

Every entry returns a triangulated compact manifold. The text form
``name(arg, ...)`` is what spec files and the CLI use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .complexes import SimplicialComplex, glue, normalize_labels, product, simplex, sphere


def disk(n: int) -> SimplicialComplex:
    """D^n as the standard n-simplex."""
    if n < 1:
        raise ValueError("disk dimension must be >= 1")
    return simplex(n)


def sphere_times_interval(n: int) -> SimplicialComplex:
    """S^(n-1) x D^1 as (boundary of the n-simplex) x (an edge)."""
    if n < 2:
        raise ValueError("sphere_times_interval needs n >= 2")
    return product(sphere(n - 1), simplex(1))


def torus() -> SimplicialComplex:
    """The 7-vertex torus."""
    tris = [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    tris += [[i, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    return SimplicialComplex(tris)


def rp2() -> SimplicialComplex:
    """The 6-vertex real projective plane (non-orientable)."""
    return SimplicialComplex(
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]]
    )


def _remove_triangle(K: SimplicialComplex, t) -> SimplicialComplex:
    return SimplicialComplex(s for s in K.maximal_simplices() if s != t)


def connected_sum(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Connected sum of closed surfaces: delete one triangle of each and
    identify the boundary circles."""
    K1, K2 = normalize_labels(K1), normalize_labels(K2)
    t1 = K1.simplices(2)[-1]
    t2 = K2.simplices(2)[0]
    A, B = _remove_triangle(K1, t1), _remove_triangle(K2, t2)
    L1 = SimplicialComplex([t1[:2], t1[1:], (t1[0], t1[2])])
    L2 = SimplicialComplex([t2[:2], t2[1:], (t2[0], t2[2])])
    return normalize_labels(glue(A, L1, B, L2, dict(zip(t2, t1))))


def closed_surface(genus: int) -> SimplicialComplex:
    if genus < 0:
        raise ValueError("genus must be >= 0")
    if genus == 0:
        return sphere(2)
    out = torus()
    for _ in range(genus - 1):
        out = connected_sum(out, torus())
    return out


def annulus() -> SimplicialComplex:
    return normalize_labels(product(sphere(1), simplex(1)))


def boundary_sum(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Boundary connected sum of surfaces along one boundary edge of each."""
    K1, K2 = normalize_labels(K1), normalize_labels(K2)
    e1 = K1.boundary().simplices(1)[0]
    e2 = K2.boundary().simplices(1)[0]
    return normalize_labels(glue(K1, SimplicialComplex([e1]), K2, SimplicialComplex([e2]), dict(zip(e2, e1))))


def surface(genus: int, boundaries: int) -> SimplicialComplex:
    """Orientable surface of the given genus with some open disks removed.

    The first disk is the open star of the last vertex of the closed
    surface; each further one comes from a boundary sum with an annulus.
    """
    if boundaries < 0:
        raise ValueError("number of boundary components must be >= 0")
    K = closed_surface(genus)
    if boundaries == 0:
        return K
    K = normalize_labels(K.delete_open_star(K.vertices[-1]))
    for _ in range(boundaries - 1):
        K = boundary_sum(K, annulus())
    return K


def annuli_sum(copies: int) -> SimplicialComplex:
    """Boundary connected sum of ``copies`` annuli S^1 x D^1."""
    if copies < 1:
        raise ValueError("need at least one annulus")
    K = annulus()
    for _ in range(copies - 1):
        K = boundary_sum(K, annulus())
    return K


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[..., SimplicialComplex]
    arity: int
    summary: str


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("disk", disk, 1, "disk(n): the n-disk as an n-simplex"),
        CatalogEntry("sphere_times_interval", sphere_times_interval, 1, "sphere_times_interval(n): S^(n-1) x D^1"),
        CatalogEntry("surface", surface, 2, "surface(g, b): genus g, b boundary circles"),
        CatalogEntry("annuli_sum", annuli_sum, 1, "annuli_sum(l): boundary sum of l copies of S^1 x D^1"),
        CatalogEntry("sphere", sphere, 1, "sphere(n): boundary of the (n+1)-simplex (closed)"),
        CatalogEntry("closed_surface", closed_surface, 1, "closed_surface(g): closed orientable genus g"),
        CatalogEntry("torus", torus, 0, "torus(): 7-vertex torus (closed)"),
        CatalogEntry("rp2", rp2, 0, "rp2(): 6-vertex projective plane (non-orientable)"),
    ]
}

_REF = re.compile(r"^\s*([a-z_][a-z0-9_]*)\s*\(\s*([-0-9,\s]*)\)\s*$")


def parse_ref(text: str) -> tuple[str, tuple[int, ...]]:
    m = _REF.match(text)
    if not m:
        raise ValueError(f"not a catalog reference: {text!r}")
    name, args = m.group(1), m.group(2).strip()
    values = tuple(int(a) for a in args.split(",")) if args else ()
    if name not in CATALOG:
        raise ValueError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG))}")
    if len(values) != CATALOG[name].arity:
        raise ValueError(f"{name} takes {CATALOG[name].arity} argument(s), got {len(values)}")
    return name, values


def build(text: str) -> SimplicialComplex:
    name, args = parse_ref(text)
    return CATALOG[name].build(*args)
