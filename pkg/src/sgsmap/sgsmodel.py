"""Input data model and prediction engine.

A spec names a compact base W with ordered boundary components
C_0, ..., C_{l2-1}, a generic fiber that is a product of spheres, and an
assignment of one fiber factor to each boundary component (the factor
capped off by a disk over that component). Everything here works from
the spec alone; building the total space is the oracle's job.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Sequence

from .complexes import (
    NonOrientableError,
    NotPseudomanifoldError,
    SimplicialComplex,
    cohomology,
    cup_product,
    fundamental_class,
    homology,
    kunneth_free,
    product_all,
    pseudomanifold_defects,
    relative_homology,
    sphere,
    sphere_homology,
)
from .complexes.cochains import Cocycle
from .exactalg import FGModule, Ring


class SpecError(ValueError):
    """Raised with every diagnostic when a spec is invalid."""

    def __init__(self, diagnostics: Sequence[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)


class HypothesisError(ValueError):
    """The freeness hypothesis behind the predictions does not hold."""


@dataclass(frozen=True)
class FiberSpec:
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def l1(self) -> int:
        return len(self.dims)

    def dim(self, j: int) -> int:
        """Dimension of factor ``j`` (1-based)."""
        return self.dims[j - 1]


@dataclass(frozen=True)
class BoundaryComponent:
    name: str
    complex: SimplicialComplex


@dataclass(frozen=True)
class BoundaryAssignment:
    """Factor index (1-based) for each boundary component, by name."""

    factors: tuple[tuple[str, int], ...]

    def __getitem__(self, name: str) -> int:
        for n, a in self.factors:
            if n == name:
                return a
        raise KeyError(name)

    def image(self) -> set[int]:
        return {a for _, a in self.factors}


@dataclass(frozen=True)
class TargetMeta:
    name: str = ""
    dimension: int | None = None


@dataclass(frozen=True)
class SGSMapSpec:
    base: SimplicialComplex
    components: tuple[BoundaryComponent, ...]
    fiber: FiberSpec
    assignment: BoundaryAssignment
    base_name: str = ""
    target: TargetMeta | None = None

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def l1(self) -> int:
        return self.fiber.l1

    @property
    def l2(self) -> int:
        return len(self.components)

    def factor_of(self, j: int) -> int:
        """Assigned fiber factor of the j-th component in the chosen order."""
        return self.assignment[self.components[j].name]


def canonical_components(base: SimplicialComplex) -> list[BoundaryComponent]:
    """Boundary components named C0, C1, ... by least vertex."""
    if base.dim < 1:
        return []
    parts = base.boundary().components()
    return [BoundaryComponent(f"C{i}", c) for i, c in enumerate(parts)]


def make_spec(
    base: SimplicialComplex,
    fiber: Sequence[int],
    assignment: Sequence[int],
    order: Sequence[str] | None = None,
    c0: str | None = None,
    base_name: str = "",
    target: TargetMeta | None = None,
) -> SGSMapSpec:
    """Build a spec from a base complex.

    ``assignment[i]`` belongs to canonical component ``C{i}``. ``order``
    lists component names with C_0 first; ``c0`` only moves one component
    to the front.
    """
    comps = canonical_components(base)
    names = [c.name for c in comps]
    diags = []
    if len(assignment) != len(comps):
        diags.append(f"assignment has {len(assignment)} entries but the base has {len(comps)} boundary components")
    if order is not None:
        if sorted(order) != sorted(names):
            diags.append(f"boundary order {list(order)} is not a permutation of {names}")
        else:
            comps = [comps[names.index(x)] for x in order]
    if c0 is not None:
        if c0 not in names:
            diags.append(f"unknown boundary component {c0!r}; known: {names}")
        else:
            comps = [c for c in comps if c.name == c0] + [c for c in comps if c.name != c0]
    if diags:
        raise SpecError(diags)
    spec = SGSMapSpec(
        base=base,
        components=tuple(comps),
        fiber=FiberSpec(tuple(fiber)),
        assignment=BoundaryAssignment(tuple(zip(names, (int(a) for a in assignment)))),
        base_name=base_name,
        target=target,
    )
    return spec


def validate(spec: SGSMapSpec) -> list[str]:
    """Every violated invariant as a diagnostic line; empty when valid."""
    diags = []
    W = spec.base
    if not W.vertices:
        return ["base: empty complex"]
    n = W.dim
    if n < 1:
        diags.append("base: dimension must be at least 1")
    if spec.l1 < 1:
        diags.append("fiber: need at least one sphere factor")
    for j, d in enumerate(spec.fiber.dims, start=1):
        if d < 1:
            diags.append(f"fiber: factor {j} has dimension {d}, must be >= 1")
    if not W.is_connected():
        diags.append("base: not connected")
    if not W.is_pure():
        diags.append("base: not pure")
    for f, tops in W.facet_incidence().items():
        if len(tops) > 2:
            diags.append(f"base: facet {f} lies in {len(tops)} top simplices")
            break
    else:
        try:
            fundamental_class(W, Ring.Z)
        except NonOrientableError:
            diags.append("base: not orientable (no relative fundamental class)")
        except NotPseudomanifoldError as e:
            diags.append(f"base: {e}")

    names = [c.name for c in spec.components]
    if len(set(names)) != len(names):
        diags.append(f"boundary: repeated component names {names}")
    union = set()
    for c in spec.components:
        K = c.complex
        if not K.is_subcomplex_of(W):
            diags.append(f"boundary {c.name}: not a subcomplex of the base")
        if not K.is_connected():
            diags.append(f"boundary {c.name}: not connected")
        if K.dim != n - 1:
            diags.append(f"boundary {c.name}: dimension {K.dim}, expected {n - 1}")
        elif n >= 2 and pseudomanifold_defects(K, closed=True):
            diags.append(f"boundary {c.name}: not a closed pseudomanifold")
        if union & K.simplex_set(0):
            diags.append(f"boundary {c.name}: overlaps another component")
        union |= K.simplex_set(0)
    expected = W.boundary() if n >= 1 else SimplicialComplex()
    got = set()
    for c in spec.components:
        got |= set(c.complex)
    if got != set(expected):
        diags.append("boundary: components do not partition the boundary of the base")

    assigned = dict(spec.assignment.factors)
    for name in names:
        if name not in assigned:
            diags.append(f"assignment: component {name} has no factor")
    for name, a in spec.assignment.factors:
        if name not in names:
            diags.append(f"assignment: unknown component {name}")
        if not 1 <= a <= spec.l1:
            diags.append(f"assignment: {name} -> {a} is out of range 1..{spec.l1}")
    return diags


def check(spec: SGSMapSpec) -> SGSMapSpec:
    diags = validate(spec)
    if diags:
        raise SpecError(diags)
    return spec


def total_dimension(spec: SGSMapSpec) -> int:
    return spec.n + sum(spec.fiber.dims)


def generic_fiber(spec: SGSMapSpec) -> SimplicialComplex:
    return product_all([sphere(d) for d in spec.fiber.dims])


# -- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """Tagged generator of a certified submodule.

    ``base``: H_i(W) class ``index`` in degree i. ``relative-dual``: the
    class paired with base generator (i, index), in degree m - i.
    ``boundary-product``: C_j times the spheres in ``T`` (1-based).
    """

    tag: str
    i: int = 0
    index: int = 0
    j: int = 0
    T: tuple[int, ...] = ()

    def label(self) -> str:
        if self.tag == "boundary-product":
            return f"boundary-product(j={self.j},T={{{','.join(map(str, self.T))}}})"
        return f"{self.tag}(i={self.i},#{self.index})"


FAMILIES = ("base", "relative-dual", "boundary-product")


@dataclass(frozen=True)
class SubmoduleCertificate:
    family: str
    degree: int
    coeff: Ring
    generators: tuple[Generator, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class DisjointnessClaim:
    degree: int
    families: tuple[str, str]
    source: str


@dataclass
class Certificates:
    spec: SGSMapSpec
    coeff: Ring
    items: list[SubmoduleCertificate] = field(default_factory=list)
    claims: list[DisjointnessClaim] = field(default_factory=list)

    def in_degree(self, d: int) -> list[SubmoduleCertificate]:
        return [c for c in self.items if c.degree == d]

    def family(self, name: str) -> list[SubmoduleCertificate]:
        return [c for c in self.items if c.family == name]


def _require_free(W: SimplicialComplex, coeff: Ring):
    if coeff is Ring.Z2:
        return
    H = homology(W, Ring.Z)
    for k, t in enumerate(H.torsion):
        if t:
            raise HypothesisError(f"freeness hypothesis violated: H_{k}(W) has torsion {list(t)}")


def base_ranks(spec: SGSMapSpec, coeff: Ring) -> tuple[list[int], list[int]]:
    """Ranks of H_i(W) and H_i(W, dW) for i = 0..n."""
    W = spec.base
    H = homology(W, coeff).betti
    if spec.l2:
        R = relative_homology(W, W.boundary(), coeff).betti
    else:
        R = H
    return list(H), list(R)


def boundary_product_tags(spec: SGSMapSpec) -> list[tuple[int, int, tuple[int, ...]]]:
    """(degree, j, T) for every admissible boundary-product generator."""
    n, m = spec.n, total_dimension(spec)
    out = []
    if spec.l2 < 2:
        return out
    factors = list(range(1, spec.l1 + 1))
    subsets = sorted(T for r in range(1, spec.l1 + 1) for T in combinations(factors, r))
    for j in range(1, spec.l2):
        blocked = {spec.factor_of(0), spec.factor_of(j)}
        for T in subsets:
            if blocked & set(T):
                continue
            deg = (n - 1) + sum(spec.fiber.dim(t) for t in T)
            if n < deg + 1 < m:
                out.append((deg, j, T))
    return out


def predict_submodules(spec: SGSMapSpec, coeff: Ring = Ring.Z) -> Certificates:
    """Theorem-backed submodules of H_*(M_0) with tagged generators."""
    check(spec)
    _require_free(spec.base, coeff)
    n, m = spec.n, total_dimension(spec)
    H, R = base_ranks(spec, coeff)
    out = Certificates(spec, coeff)
    for i in range(n + 1):
        if H[i]:
            gens = tuple(Generator("base", i=i, index=b) for b in range(H[i]))
            out.items.append(SubmoduleCertificate("base", i, coeff, gens))
    for i in range(n + 1):
        # H^i(W) is dual to H_{n-i}(W, dW); its rank equals rank H_i(W) when free.
        if R[n - i]:
            gens = tuple(Generator("relative-dual", i=i, index=b) for b in range(R[n - i]))
            out.items.append(SubmoduleCertificate("relative-dual", m - i, coeff, gens))
    by_degree: dict[int, list[Generator]] = {}
    for deg, j, T in boundary_product_tags(spec):
        by_degree.setdefault(deg, []).append(Generator("boundary-product", j=j, T=T))
    for deg in sorted(by_degree):
        out.items.append(SubmoduleCertificate("boundary-product", deg, coeff, tuple(by_degree[deg])))
    out.items.sort(key=lambda c: (c.degree, FAMILIES.index(c.family)))

    degs = {c.degree for c in out.items}
    for d in sorted(degs):
        fams = {c.family for c in out.in_degree(d)}
        if {"base", "relative-dual"} <= fams:
            out.claims.append(DisjointnessClaim(d, ("base", "relative-dual"), "base meets relative-dual trivially"))
        if {"relative-dual", "boundary-product"} <= fams:
            out.claims.append(
                DisjointnessClaim(d, ("relative-dual", "boundary-product"), "relative-dual meets boundary-product trivially")
            )
    return out


@dataclass
class Prediction:
    modules: tuple[FGModule, ...]
    certificates: Certificates

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(M.free_rank for M in self.modules)


def predict_special_generic(spec: SGSMapSpec, coeff: Ring = Ring.Z) -> Prediction:
    """Complete homology of M_0 when the fiber is a single sphere:
    H_i(M_0) = H_i(W) + H_{i-(m-n)}(W, dW)."""
    check(spec)
    if spec.l1 != 1:
        raise ValueError(f"complete prediction needs exactly one fiber factor, got {spec.l1}")
    if spec.l2 < 1:
        raise ValueError("complete prediction needs a base with nonempty boundary")
    certs = predict_submodules(spec, coeff)
    n, m = spec.n, total_dimension(spec)
    H, R = base_ranks(spec, coeff)
    ranks = []
    for i in range(m + 1):
        r = H[i] if i <= n else 0
        s = i - (m - n)
        if 0 <= s <= n:
            r += R[s]
        ranks.append(r)
    return Prediction(tuple(FGModule(coeff, r) for r in ranks), certs)


# -- decomposition for non-surjective assignments -------------------------


@dataclass
class Decomposition:
    reduced: SGSMapSpec | None
    extra_factors: tuple[int, ...]
    extra_dims: tuple[int, ...]

    def describe(self) -> str:
        red = "base alone" if self.reduced is None else f"l1'={self.reduced.l1} fiber {list(self.reduced.fiber.dims)}"
        return f"reduced: {red}; extra spheres {list(self.extra_dims)} (factors {list(self.extra_factors)})"


def decompose_nonsurjective(spec: SGSMapSpec) -> Decomposition | None:
    """Split off the fiber factors never capped by a disk.

    Returns None when the assignment is surjective. With no boundary the
    reduced spec is None and M_0 is W times the whole fiber.
    """
    check(spec)
    image = spec.assignment.image()
    kept = sorted(image)
    extra = tuple(j for j in range(1, spec.l1 + 1) if j not in image)
    if not extra:
        return None
    dims = tuple(spec.fiber.dim(j) for j in extra)
    if not kept:
        return Decomposition(None, extra, dims)
    renum = {old: new for new, old in enumerate(kept, start=1)}
    reduced = replace(
        spec,
        fiber=FiberSpec(tuple(spec.fiber.dim(j) for j in kept)),
        assignment=BoundaryAssignment(tuple((nm, renum[a]) for nm, a in spec.assignment.factors)),
    )
    return Decomposition(reduced, extra, dims)


def combine_with_extra(reduced_modules: Sequence[FGModule], dec: Decomposition, coeff: Ring) -> tuple[FGModule, ...]:
    return kunneth_free(tuple(reduced_modules), sphere_homology(dec.extra_dims, coeff))


# -- cohomology ring of the base -----------------------------------------


@dataclass
class RingTable:
    """Basis cocycles of H^*(W) and coordinates of their pairwise cups."""

    coeff: Ring
    basis: dict[int, list[Cocycle]]
    products: dict[tuple[tuple[int, int], tuple[int, int]], list[int]]

    def labels(self) -> list[tuple[int, int]]:
        return [(k, a) for k in sorted(self.basis) for a in range(len(self.basis[k]))]

    def product(self, x: tuple[int, int], y: tuple[int, int]) -> list[int]:
        return self.products[(x, y)]

    def is_trivial(self) -> bool:
        return all(not any(v) for (x, y), v in self.products.items() if x[0] > 0 and y[0] > 0)


def base_cohomology_ring(W: SimplicialComplex, coeff: Ring) -> RingTable:
    C = cohomology(W, coeff)
    basis = {k: [Cocycle(k, c) for c in C.representatives(k)] for k in range(W.dim + 1)}
    products = {}
    for p, bp in basis.items():
        for q, bq in basis.items():
            if p + q > W.dim:
                for a in range(len(bp)):
                    for b in range(len(bq)):
                        products[((p, a), (q, b))] = []
                continue
            for a, x in enumerate(bp):
                for b, y in enumerate(bq):
                    z = cup_product(W, x, y, coeff)
                    _, f = C.coordinates(p + q, z.values)
                    products[((p, a), (q, b))] = [coeff.reduce(v) for v in f]
    return RingTable(coeff, basis, products)


def cohomology_subalgebra(spec: SGSMapSpec, coeff: Ring = Ring.Z) -> RingTable:
    """Multiplication table of H^*(W), which pulls back injectively into H^*(M_0)."""
    check(spec)
    _require_free(spec.base, coeff)
    return base_cohomology_ring(spec.base, coeff)
