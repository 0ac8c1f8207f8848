import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgsmap import catalog
from sgsmap.complexes import (
    Cocycle,
    GlueError,
    NonOrientableError,
    NotPseudomanifoldError,
    SimplicialComplex,
    barycentric_subdivision,
    boundary_of,
    cap_product,
    cohomology,
    cone,
    cross,
    cup_product,
    evaluate,
    from_text,
    fundamental_class,
    glue,
    homology,
    is_closed_pseudomanifold,
    kunneth_free,
    mod2_homology,
    product,
    relative_homology,
    simplex,
    sphere,
    sphere_homology,
    staircase,
    to_text,
)
from sgsmap.complexes.kunneth import TorsionError
from sgsmap.exactalg import Ring


def test_sphere_homology():
    for n in range(1, 4):
        want = [1] + [0] * (n - 1) + [1]
        assert list(homology(sphere(n)).betti) == want
        assert list(homology(sphere(n), Ring.Z2).betti) == want


def test_torus_and_projective_plane():
    H = homology(catalog.torus())
    assert H.betti == (1, 2, 1) and not any(H.torsion)
    P = homology(catalog.rp2())
    assert P.betti == (1, 0, 0) and P.torsion[1] == (2,)
    assert homology(catalog.rp2(), Ring.Z2).betti == (1, 1, 1)


def test_barycentric_subdivision_preserves_homology():
    for K in (catalog.torus(), sphere(2)):
        sd = barycentric_subdivision(K)
        assert homology(sd).modules == homology(K).modules
        assert sd.euler_characteristic() == K.euler_characteristic()


def test_product_kunneth_mod2():
    for a, b in [(1, 1), (1, 2), (2, 1)]:
        X = product(sphere(a), sphere(b))
        got = homology(X, Ring.Z2).modules
        assert got == kunneth_free(homology(sphere(a), Ring.Z2).modules, homology(sphere(b), Ring.Z2).modules)
        assert got == sphere_homology([a, b], Ring.Z2)


def test_kunneth_rejects_torsion():
    with pytest.raises(TorsionError):
        kunneth_free(homology(catalog.rp2()).modules, homology(sphere(1)).modules)


def test_staircase_count_and_signs():
    s, t = tuple((i,) for i in range(3)), tuple((i,) for i in range(2))
    pieces = staircase(s, t)
    assert len(pieces) == 3  # binomial(3, 1)
    assert {sign for sign, _ in pieces} == {1, -1}


@pytest.mark.parametrize("p,q", [(1, 2), (2, 2), (3, 1), (2, 3)])
def test_cross_product_leibniz(p, q):
    a = {tuple((i,) for i in range(p + 1)): 1}
    b = {tuple((i,) for i in range(q + 1)): 1}
    lhs = boundary_of(cross(a, b))
    rhs = cross(boundary_of(a), b)
    for s, c in cross(a, boundary_of(b)).items():
        rhs[s] = rhs.get(s, 0) + (-1) ** p * c
    assert lhs == {s: c for s, c in rhs.items() if c}


def test_euler_characteristic_matches_betti():
    for K in (catalog.torus(), catalog.surface(2, 0), catalog.surface(1, 2), product(sphere(1), sphere(2))):
        b = homology(K, Ring.Z2).betti
        assert K.euler_characteristic() == sum((-1) ** i * x for i, x in enumerate(b))


def test_mod2_reduction_agrees_with_snf():
    for K in (catalog.torus(), catalog.rp2(), product(sphere(1), sphere(2))):
        assert mod2_homology(K).betti == homology(K, Ring.Z2).betti


def test_relative_homology_of_disk():
    D = simplex(2)
    assert relative_homology(D, D.boundary()).betti == (0, 0, 1)


def test_mayer_vietoris_two_disks_make_a_sphere():
    # two cones on the same circle glued along it
    S = sphere(1)
    A = cone(S)
    B = SimplicialComplex([s + ((9,),) for s in S.maximal_simplices()])
    X = SimplicialComplex(A.maximal_simplices() + B.maximal_simplices())
    assert homology(X).betti == (1, 0, 1)
    bA, bB, bS, bX = (homology(K, Ring.Z2).betti for K in (A, B, S, X))
    # both cones are acyclic, so H2(X) is all of H1(S) and H0 loses one copy
    assert bA[1] == bB[1] == 0
    assert bX[2] == bS[1]
    assert bX[0] == bA[0] + bB[0] - bS[0]


def test_cup_product_on_torus_is_nondegenerate():
    T = catalog.torus()
    C = cohomology(T)
    a, b = (Cocycle(1, c) for c in C.representatives(1))
    fT = fundamental_class(T)
    ab = evaluate(cup_product(T, a, b), fT)
    ba = evaluate(cup_product(T, b, a), fT)
    assert abs(ab) == 1 and ba == -ab
    assert evaluate(cup_product(T, a, a), fT) == 0


def test_cap_is_adjoint_to_cup():
    T = catalog.torus()
    C = cohomology(T)
    a, b = (Cocycle(1, c) for c in C.representatives(1))
    fT = fundamental_class(T)
    assert evaluate(cup_product(T, a, b), fT) == evaluate(a, cap_product(fT, b))


def test_fundamental_class_and_orientation():
    T = catalog.torus()
    assert not boundary_of(fundamental_class(T))
    with pytest.raises(NonOrientableError):
        fundamental_class(catalog.rp2())
    W = catalog.surface(1, 1)
    fW = fundamental_class(W)
    assert all(s in W.boundary() for s in boundary_of(fW))
    with pytest.raises(NotPseudomanifoldError):
        fundamental_class(SimplicialComplex([[0, 1, 2], [0, 1, 3], [0, 1, 4]]))


def test_glue_validates_inputs():
    D = simplex(2)
    e = SimplicialComplex([[0, 1]])
    with pytest.raises(GlueError):
        glue(D, e, D, SimplicialComplex([[0, 1], [1, 2]]), {0: 0, 1: 1, 2: 2})
    with pytest.raises(GlueError):
        glue(D, e, D, e, {0: 0})
    # two triangles along an edge make a square
    sq = glue(D, e, D, e, {0: 0, 1: 1})
    assert sq.f_vector() == (4, 5, 2)
    # gluing a triangle onto a triangle along its whole boundary is not simplicial
    with pytest.raises(GlueError):
        glue(D, D.boundary(), D, D.boundary(), {v: v for v in D.vertices})


def test_text_round_trip():
    K = product(sphere(1), simplex(1))
    text = to_text(K, ["annulus"])
    assert from_text(text) == K
    with pytest.raises(ValueError):
        from_text("dim 3\n0 1 2\n")


def test_closed_pseudomanifold():
    assert is_closed_pseudomanifold(catalog.torus())
    assert not is_closed_pseudomanifold(simplex(2))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=8))
def test_random_complexes_satisfy_euler_and_mod2_agreement(faces):
    K = SimplicialComplex(faces)
    b = homology(K, Ring.Z2).betti
    assert K.euler_characteristic() == sum((-1) ** i * x for i, x in enumerate(b))
    assert mod2_homology(K).betti == b
    assert homology(K).betti == homology(barycentric_subdivision(K)).betti


def test_components_and_boundary():
    W = catalog.surface(0, 3)
    comps = W.boundary().components()
    assert len(comps) == 3
    assert all(homology(c).betti == (1, 1) for c in comps)
    verts = [c.vertices[0] for c in comps]
    assert verts == sorted(verts)
