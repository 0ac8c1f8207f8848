import pytest

from sgsmap import catalog
from sgsmap.complexes import homology, kunneth_free, relative_homology, sphere_homology
from sgsmap.exactalg import Ring
from sgsmap.sgsmodel import (
    HypothesisError,
    SpecError,
    _require_free,
    cohomology_subalgebra,
    combine_with_extra,
    decompose_nonsurjective,
    generic_fiber,
    make_spec,
    predict_special_generic,
    predict_submodules,
    total_dimension,
    validate,
)


def ex23():
    return make_spec(catalog.sphere_times_interval(3), [1, 2], [1, 1])


def ex22():
    return make_spec(catalog.sphere_times_interval(2), [1, 1], [1, 2])


def test_catalog_bases():
    assert homology(catalog.surface(1, 1)).betti == (1, 2, 0)
    W = catalog.surface(0, 3)
    assert homology(W).betti == (1, 2, 0)
    assert relative_homology(W, W.boundary()).betti == (0, 2, 1)
    assert len(catalog.sphere_times_interval(3).boundary().components()) == 2
    assert homology(catalog.closed_surface(2)).betti == (1, 4, 1)
    assert catalog.build("surface(1, 1)") == catalog.surface(1, 1)
    with pytest.raises(ValueError):
        catalog.parse_ref("disk(1, 2)")
    with pytest.raises(ValueError):
        catalog.parse_ref("klein_bottle()")


def test_validate_accepts_disk_spec():
    assert validate(make_spec(catalog.disk(2), [1], [1])) == []


def test_validate_reports_range_and_orientability():
    diags = validate(make_spec(catalog.disk(2), [1, 1], [3]))
    assert any("out of range" in d for d in diags)
    diags = validate(make_spec(catalog.rp2(), [1], []))
    assert any("orientable" in d for d in diags)


def test_make_spec_reports_arity_and_order_problems():
    with pytest.raises(SpecError):
        make_spec(catalog.annulus(), [1], [1])
    with pytest.raises(SpecError):
        make_spec(catalog.annulus(), [1], [1, 1], order=["C0", "C7"])
    spec = make_spec(catalog.surface(0, 3), [1, 2], [1, 2, 2], c0="C1")
    assert [c.name for c in spec.components] == ["C1", "C0", "C2"]
    assert spec.factor_of(0) == 2 and spec.factor_of(1) == 1


def test_total_dimension():
    assert total_dimension(ex23()) == 6
    assert total_dimension(make_spec(catalog.disk(2), [1], [1])) == 3
    k1, k2 = 2, 3
    assert total_dimension(make_spec(catalog.sphere_times_interval(3), [k1, k2], [1, 2])) == k1 + k2 + 3


def test_total_dimension_is_additive_in_fiber():
    base = make_spec(catalog.disk(2), [1], [1])
    more = make_spec(catalog.disk(2), [1, 4], [1])
    assert total_dimension(more) == total_dimension(base) + 4


def test_generic_fiber():
    F = generic_fiber(make_spec(catalog.disk(2), [1], [1]))
    assert F.f_vector() == (3, 3)
    F = generic_fiber(make_spec(catalog.disk(2), [1, 2], [1]))
    assert len(F.vertices) == 12
    assert homology(F).betti == (1, 1, 1, 1)
    assert homology(generic_fiber(make_spec(catalog.disk(2), [1, 1], [1]))).betti == (1, 2, 1)


@pytest.mark.parametrize(
    "base,nb,want",
    [
        (catalog.disk(2), 1, (1, 0, 0, 1)),
        (catalog.annulus(), 2, (1, 1, 1, 1)),
        (catalog.surface(1, 1), 1, (1, 2, 2, 1)),
    ],
)
def test_predict_special_generic(base, nb, want):
    pred = predict_special_generic(make_spec(base, [1], [1] * nb))
    assert pred.betti == want


def test_prediction_ranks_are_symmetric():
    for base, nb in [(catalog.surface(1, 1), 1), (catalog.surface(0, 3), 3), (catalog.sphere_times_interval(3), 2)]:
        for k in (1, 2, 3):
            b = predict_special_generic(make_spec(base, [k], [1] * nb)).betti
            assert b == b[::-1]


def test_predict_special_generic_needs_one_factor():
    with pytest.raises(ValueError):
        predict_special_generic(ex23())


def test_freeness_check():
    with pytest.raises(HypothesisError):
        _require_free(catalog.rp2(), Ring.Z)
    _require_free(catalog.rp2(), Ring.Z2)


def test_example_2_3_boundary_product():
    certs = predict_submodules(ex23())
    bp = certs.family("boundary-product")
    assert len(bp) == 1
    assert bp[0].degree == 4 and bp[0].rank == 1
    g = bp[0].generators[0]
    assert (g.j, g.T) == (1, (2,))
    claims = [(c.degree, c.families) for c in certs.claims]
    assert (4, ("relative-dual", "boundary-product")) in claims


def test_example_2_2_has_no_boundary_products():
    assert predict_submodules(ex22()).family("boundary-product") == []


def test_single_component_has_no_boundary_products():
    for base in (catalog.disk(2), catalog.surface(1, 1)):
        assert predict_submodules(make_spec(base, [1, 1], [1])).family("boundary-product") == []


def test_boundary_product_rules():
    # genus-0 base with three circles, three factors: C0 -> 1, C1 -> 2, C2 -> 1
    spec = make_spec(catalog.surface(0, 3), [1, 1, 1], [1, 2, 1])
    certs = predict_submodules(spec)
    tags = [(c.degree, g.j, g.T) for c in certs.family("boundary-product") for g in c.generators]
    n, m = 2, 5
    for deg, j, T in tags:
        assert n < deg + 1 < m
        assert not {spec.factor_of(0), spec.factor_of(j)} & set(T)
    assert (2, 1, (3,)) in tags and (2, 2, (2,)) in tags and (2, 2, (3,)) in tags
    assert (3, 2, (2, 3)) in tags


def test_certificates_relabel_under_fiber_permutation():
    a = predict_submodules(make_spec(catalog.surface(0, 3), [1, 2], [1, 1, 1]))
    b = predict_submodules(make_spec(catalog.surface(0, 3), [2, 1], [2, 2, 2]))
    swap = {1: 2, 2: 1}
    ta = sorted((c.degree, c.family, g.tag, g.i, g.index, g.j, tuple(sorted(swap[t] for t in g.T))) for c in a.items for g in c.generators)
    tb = sorted((c.degree, c.family, g.tag, g.i, g.index, g.j, g.T) for c in b.items for g in c.generators)
    assert ta == tb


def test_decomposition_example_2_3():
    dec = decompose_nonsurjective(ex23())
    assert dec.extra_dims == (2,)
    assert dec.reduced.l1 == 1 and dec.reduced.fiber.dims == (1,)
    red = predict_special_generic(dec.reduced)
    assert red.betti == (1, 0, 2, 0, 1)
    assert [M.free_rank for M in combine_with_extra(red.modules, dec, Ring.Z)] == [1, 0, 3, 0, 3, 0, 1]


def test_decomposition_surjective_and_closed():
    assert decompose_nonsurjective(ex22()) is None
    dec = decompose_nonsurjective(make_spec(catalog.torus(), [1, 2], []))
    assert dec.reduced is None and dec.extra_dims == (1, 2)
    got = combine_with_extra(homology(catalog.torus()).modules, dec, Ring.Z)
    assert got == kunneth_free(homology(catalog.torus()).modules, sphere_homology([1, 2]))
    assert [M.free_rank for M in got] == [1, 3, 4, 4, 3, 1]


def test_cohomology_subalgebra():
    assert cohomology_subalgebra(make_spec(catalog.disk(2), [1], [1])).labels() == [(0, 0)]
    T = cohomology_subalgebra(make_spec(catalog.torus(), [1], []))
    ab, ba = T.product((1, 0), (1, 1)), T.product((1, 1), (1, 0))
    assert abs(ab[0]) == 1 and ba == [-ab[0]]
    assert T.product((1, 0), (1, 0)) == [0]
    assert cohomology_subalgebra(make_spec(catalog.surface(1, 1), [1], [1])).is_trivial()
