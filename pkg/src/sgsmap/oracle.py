"""Explicit triangulation of the total space M_0 and verification of every
prediction against its true homology.

M_0 is the union of P = W x F with one piece
B_j = C_j x (F with factor a_j replaced by the cone on that sphere)
for every boundary component C_j, glued along the seams C_j x F. All
labels come from concatenating factor labels, so a seam is literally the
same set of simplices in both pieces and the union needs no relabeling.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping

from .complexes import (
    BudgetExceeded,
    Chain,
    Cocycle,
    GradedHomology,
    Mod2Homology,
    NonOrientableError,
    SimplicialComplex,
    add_chains,
    boundary_of,
    cap_product,
    cohomology,
    cone,
    cross,
    cross_all,
    evaluate,
    fundamental_class,
    homology,
    mod2_homology,
    product,
    product_all,
    pseudomanifold_defects,
    pullback,
    sphere,

)
from .complexes.chains import restrict
from .complexes.cochains import cup_cochains
from .exactalg import FGModule, IntMatrix, NotUnimodularError, Ring, determinant, gf2, unimodular_inverse
from .sgsmodel import (
    Certificates,
    Generator,
    HypothesisError,
    SGSMapSpec,
    SubmoduleCertificate,
    base_cohomology_ring,
    check,
    combine_with_extra,
    decompose_nonsurjective,
    predict_special_generic,
    predict_submodules,
    total_dimension,
)

DEFAULT_BUDGET = 5000


class ConstructionError(RuntimeError):
    """The glued complex violates an invariant that holds for valid specs."""


@dataclass
class TotalSpaceModel:
    spec: SGSMapSpec
    complex: SimplicialComplex
    pieces: dict[str, SimplicialComplex]
    seams: dict[str, SimplicialComplex]
    spheres: list[SimplicialComplex]
    fiber: SimplicialComplex

    @property
    def m(self) -> int:
        return total_dimension(self.spec)

    @property
    def basepoint(self):
        """Lexicographically least vertex of the fiber."""
        return self.fiber.vertices[0]


def _piece_factors(spec: SGSMapSpec, spheres: list[SimplicialComplex], j: int) -> list[SimplicialComplex]:
    a = spec.factor_of(j)
    return [cone(S) if t == a else S for t, S in enumerate(spheres, start=1)]


def build_total_space(spec: SGSMapSpec) -> TotalSpaceModel:
    check(spec)
    W = spec.base
    spheres = [sphere(d) for d in spec.fiber.dims]
    F = product_all(spheres)
    P = product(W, F)
    pieces = {"P": P}
    seams = {}
    tops = list(P.maximal_simplices())
    for j, comp in enumerate(spec.components):
        B = product_all([comp.complex] + _piece_factors(spec, spheres, j))
        seam = product(comp.complex, F)
        for s in seam:
            if s not in P:
                raise ConstructionError(f"seam {comp.name} x F: simplex {s} missing from P")
            if s not in B:
                raise ConstructionError(f"seam {comp.name} x F: simplex {s} missing from B_{j}")
        for s in B.simplices(B.dim):
            if s in P and s not in seam:
                raise ConstructionError(f"piece B_{j} meets P outside the seam in {s}")
        pieces[f"B{j}"] = B
        seams[comp.name] = seam
        tops.extend(B.maximal_simplices())
    M = SimplicialComplex(tops)
    m = total_dimension(spec)
    if M.dim != m:
        raise ConstructionError(f"glued complex has dimension {M.dim}, expected {m}")
    bad = pseudomanifold_defects(M, closed=True)
    if bad:
        raise ConstructionError(f"glued complex is not a closed pseudomanifold: {bad[0]}")
    return TotalSpaceModel(spec, M, pieces, seams, spheres, F)


def export_text(model: TotalSpaceModel) -> str:
    """The complexes text format with top simplices grouped by piece."""
    spec = model.spec
    M = model.complex
    lines = [f"dim {M.dim}"]
    lines.append(f"# total space: m={model.m} n={spec.n} fiber={list(spec.fiber.dims)} f-vector={list(M.f_vector())} euler={M.euler_characteristic()}")
    for name, seam in model.seams.items():
        lines.append(f"# seam {name} x F: {seam.count(seam.dim)} top simplices shared by P and its B piece")
    fmt = lambda s: " ".join(".".join(str(x) for x in v) for v in s)
    for key, piece in model.pieces.items():
        if key == "P":
            lines.append(f"# piece P = W x F ({piece.count(piece.dim)} top simplices)")
        else:
            j = int(key[1:])
            comp = spec.components[j]
            lines.append(
                f"# piece {key} = {comp.name} x cone on factor {spec.factor_of(j)} ({piece.count(piece.dim)} top simplices)"
            )
        lines.extend(fmt(s) for s in piece.maximal_simplices())
    return "\n".join(lines) + "\n"


# -- homology of the total space ------------------------------------------


@dataclass
class OracleHomology:
    coeff: Ring
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    exact: GradedHomology | None = None
    mod2: Mod2Homology | None = None

    @property
    def modules(self) -> tuple[FGModule, ...]:
        return tuple(FGModule(self.coeff, b, t) for b, t in zip(self.betti, self.torsion))

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion)

    def span_rank(self, k: int, chains: list[Mapping]) -> int:
        if self.exact is not None:
            return self.exact.span_rank(k, chains)
        return self.mod2.span_rank(k, chains)


def largest_degree(K: SimplicialComplex) -> tuple[int, int]:
    f = K.f_vector()
    k = max(range(len(f)), key=lambda i: f[i])
    return k, f[k]


def oracle_homology(model: TotalSpaceModel | SimplicialComplex, coeff: Ring = Ring.Z, budget: int = DEFAULT_BUDGET) -> OracleHomology:
    """Exact homology with representatives when every degree fits the
    budget; otherwise Z/2 Betti numbers by bitset reduction. Over Z an
    oversized complex raises BudgetExceeded."""
    M = model.complex if isinstance(model, TotalSpaceModel) else model
    k, size = largest_degree(M)
    if size <= budget:
        H = homology(M, coeff)
        return OracleHomology(coeff, H.betti, H.torsion, exact=H)
    if coeff is Ring.Z:
        raise BudgetExceeded(k, size, budget)
    H2 = mod2_homology(M)
    return OracleHomology(coeff, H2.betti, tuple(() for _ in H2.betti), mod2=H2)


# -- realizing certificate generators -------------------------------------


@dataclass
class BaseDuality:
    """Cycles of W and the dual relative cycles [W] cap phi*_b, per degree."""

    cycles: dict[int, list[Chain]]
    relative: dict[int, list[Chain]]


def base_duality(W: SimplicialComplex, coeff: Ring) -> BaseDuality:
    H = homology(W, coeff)
    C = cohomology(W, coeff)
    fW = fundamental_class(W, coeff)
    cycles, relative = {}, {}
    for i in range(W.dim + 1):
        z = H.representatives(i)
        psi = [Cocycle(i, c) for c in C.representatives(i)]
        cycles[i] = z
        if not z:
            relative[i] = []
            continue
        E = IntMatrix.from_dense([[evaluate(p, c, coeff) for c in z] for p in psi])
        X = unimodular_inverse(E, coeff).to_dense()
        duals = []
        for b in range(len(z)):
            phi = Cocycle(i, {})
            for a, p in enumerate(psi):
                if X[b][a]:
                    phi = phi.plus(p.scaled(X[b][a], coeff), coeff)
            duals.append(cap_product(fW, phi, coeff))
        relative[i] = duals
    return BaseDuality(cycles, relative)


def _point_chain(v) -> Chain:
    return {(v,): 1}


def realize_generator(model: TotalSpaceModel, gen: Generator, duality: BaseDuality, coeff: Ring) -> Chain:
    spec = model.spec
    if gen.tag == "base":
        z = duality.cycles[gen.i][gen.index]
        return cross(z, _point_chain(model.basepoint), coeff)
    if gen.tag == "relative-dual":
        y = duality.relative[gen.i][gen.index]
        classes = [fundamental_class(S, coeff) for S in model.spheres]
        out = cross(y, cross_all(classes, coeff), coeff)
        dy = boundary_of(y, coeff)
        for j, comp in enumerate(spec.components):
            dyj = restrict(dy, comp.complex)
            if not dyj:
                continue
            a = spec.factor_of(j)
            caps = list(classes)
            caps[a - 1] = fundamental_class(cone(model.spheres[a - 1]), coeff, relative=True)
            piece = cross(dyj, cross_all(caps, coeff), coeff)
            seam = model.seams[comp.name]
            for sign in (-1, 1):
                trial = add_chains(out, piece, sign, coeff)
                if not restrict(boundary_of(trial, coeff), seam):
                    out = trial
                    break
            else:
                raise ConstructionError(f"cannot close {gen.label()} across seam {comp.name}")
        return out
    if gen.tag == "boundary-product":
        comp = spec.components[gen.j]
        parts = [fundamental_class(comp.complex, coeff)]
        for t, S in enumerate(model.spheres, start=1):
            parts.append(fundamental_class(S, coeff) if t in gen.T else _point_chain(S.vertices[0]))
        return cross_all(parts, coeff)
    raise ValueError(f"unknown generator tag {gen.tag!r}")


def realize_certificate(model: TotalSpaceModel, cert: SubmoduleCertificate, duality: BaseDuality | None = None) -> list[Chain]:
    """One cycle per generator, each checked to have zero boundary."""
    if duality is None:
        duality = base_duality(model.spec.base, cert.coeff)
    out = []
    for g in cert.generators:
        z = realize_generator(model, g, duality, cert.coeff)
        if boundary_of(z, cert.coeff):
            raise ConstructionError(f"realization of {g.label()} is not a cycle")
        for s in z:
            if s not in model.complex:
                raise ConstructionError(f"realization of {g.label()} leaves the complex at {s}")
        out.append(z)
    return out


# -- report ---------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped | vacuous
    detail: str = ""


@dataclass
class CertificateVerdict:
    family: str
    degree: int
    rank: int
    generators: list[str]
    verdict: str  # verified | rank-gap | hypothesis-violated
    realized_rank: int


@dataclass
class DegreeSummary:
    degree: int
    oracle_rank: int
    certified: int
    joint_rank: int
    uncovered: int


@dataclass
class VerificationReport:
    spec: dict
    coeff: str
    m: int
    f_vector: list[int]
    betti: list[int]
    torsion: list[list[int]]
    predicted: list[int] | None
    certificates: list[CertificateVerdict]
    degrees: list[DegreeSummary]
    checks: list[CheckResult]
    hypothesis_violated: bool = False
    budget_exceeded: str | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.hypothesis_violated and self.budget_exceeded is None

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def spec_echo(spec: SGSMapSpec) -> dict:
    return {
        "base": spec.base_name or f"complex with f-vector {list(spec.base.f_vector())}",
        "n": spec.n,
        "m": total_dimension(spec),
        "l1": spec.l1,
        "l2": spec.l2,
        "fiber": list(spec.fiber.dims),
        "components": [c.name for c in spec.components],
        "assignment": {c.name: spec.assignment[c.name] for c in spec.components},
    }


# -- cohomological checks on small instances ------------------------------


class _Duality:
    """Poincare duality and Kronecker pairing on an exactly computed M_0."""

    def __init__(self, model: TotalSpaceModel, H: GradedHomology, coeff: Ring):
        self.M = model.complex
        self.m = model.m
        self.H = H
        self.C = cohomology(self.M, coeff)
        self.coeff = coeff
        self.fM = fundamental_class(self.M, coeff)
        self._pd: dict[int, list[list[int]]] = {}

    def cobasis(self, k: int) -> list[Cocycle]:
        return [Cocycle(k, c) for c in self.C.representatives(k)]

    def combine(self, k: int, weights: list[int]) -> Cocycle:
        out = Cocycle(k, {})
        for w, c in zip(weights, self.cobasis(k)):
            if w:
                out = out.plus(c.scaled(w, self.coeff), self.coeff)
        return out

    def free_coords(self, k: int, chain: Mapping) -> list[int]:
        return self.H.coordinates(k, chain)[1]

    def pd_inverse(self, k: int, chain: Mapping) -> Cocycle:
        """Cohomology class whose cap with [M] is the class of ``chain``."""
        inv = self._pd.get(k)
        if inv is None:
            cols = [self.free_coords(k, cap_product(self.fM, c, self.coeff)) for c in self.cobasis(self.m - k)]
            P = IntMatrix.from_dense([[col[r] for col in cols] for r in range(self.H[k].rank)], cols=len(cols))
            inv = unimodular_inverse(P, self.coeff).to_dense()
            self._pd[k] = inv
        x = self.free_coords(k, chain)
        w = [self.coeff.reduce(sum(row[i] * x[i] for i in range(len(x)))) for row in inv]
        return self.combine(self.m - k, w)

    def integral(self, a: Cocycle, b: Cocycle) -> int:
        return evaluate(cup_cochains(self.M, a, b, self.coeff), self.fM, self.coeff)

    def kronecker_duals(self, k: int, classes: list[Chain]) -> list[Cocycle]:
        """Cocycles kappa_y with <kappa_y, classes[x]> = delta; the classes
        must be a basis of the free part of H_k."""
        gens = self.H.representatives(k)
        cob = self.cobasis(k)
        E = [[evaluate(c, g, self.coeff) for g in gens] for c in cob]
        Q = [self.free_coords(k, z) for z in classes]
        EQ = [[self.coeff.reduce(sum(E[a][g] * Q[x][g] for g in range(len(gens)))) for x in range(len(classes))] for a in range(len(cob))]
        inv = unimodular_inverse(IntMatrix.from_dense(EQ, cols=len(classes)), self.coeff).to_dense()
        return [self.combine(k, inv[y]) for y in range(len(classes))]

    def is_zero_class(self, k: int, c: Cocycle) -> bool:
        t, f = self.C.coordinates(k, c.values)
        return not any(t) and not any(f)


def _pairing_check(dual: _Duality, realized: dict[Generator, Chain], coeff: Ring, m: int) -> CheckResult:
    by_i: dict[int, tuple[list, list]] = {}
    for g, z in realized.items():
        if g.tag == "base":
            by_i.setdefault(g.i, ([], []))[0].append((g.index, z))
        elif g.tag == "relative-dual":
            by_i.setdefault(g.i, ([], []))[1].append((g.index, z))
    notes = []
    for i, (base, rel) in sorted(by_i.items()):
        base.sort(key=lambda t: t[0])
        rel.sort(key=lambda t: t[0])
        if len(base) != len(rel):
            return CheckResult("pairing", "fail", f"degree {i}: {len(base)} base vs {len(rel)} relative-dual generators")
        alphas = [dual.pd_inverse(i, z) for _, z in base]
        betas = [dual.pd_inverse(m - i, z) for _, z in rel]
        G = [[dual.integral(a, b) for b in betas] for a in alphas]
        det = determinant(IntMatrix.from_dense(G, cols=len(betas)))
        if coeff.reduce(det) == 0 or (coeff is Ring.Z and abs(det) != 1):
            return CheckResult("pairing", "fail", f"degree {i}: pairing matrix {G} is not unimodular")
        if any(coeff.reduce(abs(G[b][b])) != 1 for b in range(len(G))):
            return CheckResult("pairing", "fail", f"degree {i}: diagonal of {G} is not +-1")
        notes.append(f"i={i}: {G}")
    if not notes:
        return CheckResult("pairing", "vacuous", "no base/relative-dual pairs")
    return CheckResult("pairing", "pass", "; ".join(notes))


def _relative_cup_check(dual: _Duality, certs: Certificates, realized: dict[Generator, Chain], m: int) -> CheckResult:
    """Cup products among the cohomology classes dual to the relative-dual
    homology classes vanish."""
    duals: dict[int, list[Cocycle]] = {}
    for d in range(m + 1):
        gens = [g for c in certs.in_degree(d) for g in c.generators if g.tag in ("base", "relative-dual")]
        rel = [g for g in gens if g.tag == "relative-dual"]
        if not rel:
            continue
        kap = dual.kronecker_duals(d, [realized[g] for g in gens])
        duals[d] = [k for g, k in zip(gens, kap) if g.tag == "relative-dual"]
    tested = 0
    for p, ka in duals.items():
        for q, kb in duals.items():
            if p + q > m:
                continue
            for a in ka:
                for b in kb:
                    tested += 1
                    if not dual.is_zero_class(p + q, cup_cochains(dual.M, a, b, dual.coeff)):
                        return CheckResult("relative-cup", "fail", f"nonzero cup in degree {p + q}")
    if not tested:
        return CheckResult("relative-cup", "vacuous", "every product lies above the top degree")
    return CheckResult("relative-cup", "pass", f"{tested} products vanish")


def _subalgebra_check(dual: _Duality, spec: SGSMapSpec, coeff: Ring) -> CheckResult:
    """Pull H^*(W) back along the projection to W: injective and multiplicative."""
    W = spec.base
    arity = W.arity
    table = base_cohomology_ring(W, coeff)
    q = lambda v: v[:arity]
    pulled = {}
    for k, basis in table.basis.items():
        pulled[k] = [pullback(q, dual.M, c, coeff) for c in basis]
        rank = dual.C[k].span_rank([dual.C.chains.vector(k, c.values) for c in pulled[k]])
        if rank != len(basis):
            return CheckResult("subalgebra", "fail", f"H^{k}(W) pulls back with rank {rank} < {len(basis)}")
    for (x, y), prod in table.products.items():
        p, q_ = x[0], y[0]
        if p + q_ > dual.m:
            continue
        lhs = dual.C.coordinates(p + q_, cup_cochains(dual.M, pulled[p][x[1]], pulled[q_][y[1]], coeff).values)[1]
        rhs = [0] * len(lhs)
        for c, w in enumerate(prod):
            cc = dual.C.coordinates(p + q_, pulled[p + q_][c].values)[1]
            rhs = [r + w * v for r, v in zip(rhs, cc)]
        if [coeff.reduce(v) for v in lhs] != [coeff.reduce(v) for v in rhs]:
            return CheckResult("subalgebra", "fail", f"product {x} x {y} does not match the base table")
    return CheckResult("subalgebra", "pass", f"{sum(len(b) for b in table.basis.values())} base classes, products preserved")


# -- Mayer-Vietoris rank exactness over Z/2 -------------------------------


def _cycle_reps(K: SimplicialComplex, H: Mod2Homology, k: int) -> list[int]:
    cc = H.chains
    if k == 0:
        kernel = [1 << i for i in range(cc.rank(0))]
    else:
        kernel = gf2.reduce_columns(cc.boundary_bits(k), track=True).kernel
    ech = H.images[k + 1].copy() if k + 1 in H.images else gf2.Echelon()
    reps = []
    for z in kernel:
        if ech.add(z):
            reps.append(z)
    return reps


def mayer_vietoris_check(model: TotalSpaceModel) -> CheckResult:
    """b_k(M) = b_k(A)+b_k(B)-rk phi_k + b_{k-1}(S)-rk phi_{k-1} over Z/2,
    with A = P, B the union of the capped pieces and S the union of seams."""
    spec = model.spec
    M = model.complex
    if not spec.l2:
        return CheckResult("mayer-vietoris", "vacuous", "no boundary pieces")
    A = model.pieces["P"]
    B = SimplicialComplex([s for k, piece in model.pieces.items() if k != "P" for s in piece.maximal_simplices()])
    S = SimplicialComplex([s for seam in model.seams.values() for s in seam.maximal_simplices()])
    hM, hA, hB, hS = (mod2_homology(X) for X in (M, A, B, S))
    m = model.m
    phi = []
    for k in range(S.dim + 1):
        nA = hA.chains.rank(k)
        ech = gf2.Echelon()
        if k + 1 in hA.images:
            for v in hA.images[k + 1].pivots.values():
                ech.add(v)
        if k + 1 in hB.images:
            for v in hB.images[k + 1].pivots.values():
                ech.add(v << nA)
        r = 0
        basis = hS.chains.basis(k)
        ia, ib = hA.chains.index(k), hB.chains.index(k)
        for z in _cycle_reps(S, hS, k):
            simplices = [basis[i] for i in gf2.indices_from_bits(z)]
            v = gf2.bits_from_indices(ia[s] for s in simplices) | (gf2.bits_from_indices(ib[s] for s in simplices) << nA)
            if ech.add(v):
                r += 1
        phi.append(r)
    get = lambda h, k: h.betti[k] if 0 <= k < len(h.betti) else 0
    rk = lambda k: phi[k] if 0 <= k < len(phi) else 0
    for k in range(m + 1):
        want = get(hA, k) + get(hB, k) - rk(k) + get(hS, k - 1) - rk(k - 1)
        if get(hM, k) != want:
            return CheckResult("mayer-vietoris", "fail", f"degree {k}: b(M)={get(hM, k)} but the sequence gives {want}")
    return CheckResult("mayer-vietoris", "pass", f"phi ranks {phi}")


# -- verification ---------------------------------------------------------


def verify(spec: SGSMapSpec, coeff: Ring = Ring.Z2, budget: int = DEFAULT_BUDGET, mv: bool = True) -> VerificationReport:
    timings = {}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = round(now - clock, 3)
        clock = now

    check(spec)
    m = total_dimension(spec)
    model = build_total_space(spec)
    M = model.complex
    lap("build")
    checks: list[CheckResult] = [CheckResult("closed-pseudomanifold", "pass", f"dimension {m}")]
    try:
        fM = fundamental_class(M, Ring.Z)
        ok = not boundary_of(fM)
        checks.append(CheckResult("orientable", "pass" if ok else "fail", "fundamental cycle found"))
    except NonOrientableError as e:
        checks.append(CheckResult("orientable", "fail", str(e)))

    report = VerificationReport(
        spec=spec_echo(spec), coeff=str(coeff), m=m, f_vector=list(M.f_vector()),
        betti=[], torsion=[], predicted=None, certificates=[], degrees=[], checks=checks,
    )
    try:
        H = oracle_homology(model, coeff, budget)
    except BudgetExceeded as e:
        report.budget_exceeded = f"oracle homology stopped in degree {e.degree}: {e}"
        report.timings = timings
        return report
    lap("homology")
    report.betti = list(H.betti)
    report.torsion = [list(t) for t in H.torsion]

    chi = M.euler_characteristic()
    alt = sum((-1) ** k * b for k, b in enumerate(H.betti))
    checks.append(CheckResult("euler", "pass" if chi == alt else "fail", f"simplices {chi}, Betti {alt}"))
    sym = all(H.betti[i] == H.betti[m - i] for i in range(m + 1))
    checks.append(CheckResult("betti-symmetry", "pass" if sym else "fail", f"{list(H.betti)}"))
    if H.has_torsion:
        report.hypothesis_violated = True
        checks.append(CheckResult("freeness", "fail", f"torsion {report.torsion}; certificates are informational only"))
    elif coeff is Ring.Z:
        checks.append(CheckResult("freeness", "pass", "no torsion"))

    try:
        certs = predict_submodules(spec, coeff)
    except HypothesisError as e:
        report.hypothesis_violated = True
        checks.append(CheckResult("base-freeness", "fail", str(e)))
        certs = None

    if certs is not None:
        if spec.l1 == 1 and spec.l2 >= 1:
            pred = predict_special_generic(spec, coeff)
            report.predicted = list(pred.betti)
            same = list(pred.betti) == list(H.betti) and not H.has_torsion
            checks.append(CheckResult("prediction", "pass" if same else "fail", f"predicted {list(pred.betti)}, oracle {list(H.betti)}"))

        duality = base_duality(spec.base, coeff)
        realized: dict[Generator, Chain] = {}
        per_degree: dict[int, list[Chain]] = {}
        fam_chains: dict[tuple[int, str], list[Chain]] = {}
        for cert in certs.items:
            zs = realize_certificate(model, cert, duality)
            realized.update(zip(cert.generators, zs))
            r = H.span_rank(cert.degree, zs)
            if report.hypothesis_violated:
                verdict = "hypothesis-violated"
            else:
                verdict = "verified" if r == cert.rank else "rank-gap"
            report.certificates.append(
                CertificateVerdict(cert.family, cert.degree, cert.rank, [g.label() for g in cert.generators], verdict, r)
            )
            per_degree.setdefault(cert.degree, []).extend(zs)
            fam_chains[(cert.degree, cert.family)] = zs
        lap("certificates")

        for d in range(m + 1):
            zs = per_degree.get(d, [])
            joint = H.span_rank(d, zs) if zs else 0
            claimed = sum(c.rank for c in certs.in_degree(d))
            report.degrees.append(DegreeSummary(d, H.betti[d], claimed, joint, H.betti[d] - joint))
        bad = []
        for claim in certs.claims:
            a = fam_chains[(claim.degree, claim.families[0])]
            b = fam_chains[(claim.degree, claim.families[1])]
            if H.span_rank(claim.degree, a + b) != H.span_rank(claim.degree, a) + H.span_rank(claim.degree, b):
                bad.append(f"degree {claim.degree}: {claim.families[0]} and {claim.families[1]} overlap")
        total_bad = [s.degree for s in report.degrees if s.joint_rank != s.certified]
        if bad or total_bad:
            detail = "; ".join(bad) or f"joint span short of the certified rank in degrees {total_bad}"
            checks.append(CheckResult("disjointness", "fail", detail))
        elif certs.claims:
            checks.append(CheckResult("disjointness", "pass", f"{len(certs.claims)} claims, joint spans additive in every degree"))
        else:
            checks.append(CheckResult("disjointness", "vacuous", "no degree holds two claimed families"))

        if H.exact is not None and not H.has_torsion:
            dual = _Duality(model, H.exact, coeff)
            try:
                checks.append(_pairing_check(dual, realized, coeff, m))
            except NotUnimodularError as e:
                checks.append(CheckResult("pairing", "fail", f"duality map not invertible: {e}"))
            if spec.l1 == 1 and spec.l2 >= 1:
                try:
                    checks.append(_relative_cup_check(dual, certs, realized, m))
                except NotUnimodularError as e:
                    checks.append(CheckResult("relative-cup", "fail", f"classes do not form a basis: {e}"))
            checks.append(_subalgebra_check(dual, spec, coeff))
            lap("cohomology")
        else:
            for name in ("pairing", "subalgebra"):
                checks.append(CheckResult(name, "skipped", "over budget for exact cohomology"))

    dec = decompose_nonsurjective(spec)
    if dec is not None:
        checks.append(_decomposition_check(spec, dec, H, coeff, budget))
    if mv:
        checks.append(mayer_vietoris_check(model))
        lap("mayer-vietoris")
    report.timings = timings
    return report


def reduced_homology(dec, spec: SGSMapSpec, coeff: Ring, budget: int = DEFAULT_BUDGET) -> tuple[FGModule, ...]:
    """Homology of the reduced total space of a decomposition."""
    if dec.reduced is None:
        return homology(spec.base, coeff).modules
    red = dec.reduced
    if red.l1 == 1 and red.l2 >= 1:
        return predict_special_generic(red, coeff).modules
    return oracle_homology(build_total_space(red), coeff, budget).modules


def _decomposition_check(spec, dec, H: OracleHomology, coeff: Ring, budget: int) -> CheckResult:
    try:
        got = combine_with_extra(reduced_homology(dec, spec, coeff, budget), dec, coeff)
    except (BudgetExceeded, HypothesisError, ValueError) as e:
        return CheckResult("decomposition", "skipped", str(e))
    ranks = [M.free_rank for M in got]
    ok = ranks == list(H.betti)
    return CheckResult("decomposition", "pass" if ok else "fail", f"{dec.describe()}: Kunneth {ranks}, oracle {list(H.betti)}")
