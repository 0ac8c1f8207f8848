import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as smith_normal_form_sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sgsmap.exactalg import (
    FGModule,
    IntMatrix,
    NotUnimodularError,
    Ring,
    cokernel_presentation,
    determinant,
    homology_of_pair,
    rank,
    smith_normal_form,
    unimodular_inverse,
)
from sgsmap.exactalg import gf2


def check_snf(A, ring=Ring.Z):
    d = smith_normal_form(A, ring)
    assert (d.U @ A @ d.V).over(ring) == d.S
    n, m = A.shape
    assert (d.U @ d.U_inv).over(ring) == IntMatrix.identity(n)
    assert (d.V @ d.V_inv).over(ring) == IntMatrix.identity(m)
    for (r, c) in d.S.entries:
        assert r == c
    diag = d.diagonal
    assert all(x > 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    return d


def test_snf_small_example():
    d = check_snf(IntMatrix.from_dense([[2, 4], [6, 8]]))
    assert d.diagonal == (2, 4)


def test_snf_zero_and_empty():
    assert smith_normal_form(IntMatrix.zeros(3, 2)).rank == 0
    assert smith_normal_form(IntMatrix(0, 4)).rank == 0


def test_snf_invariant_factors_match_sympy():
    A = IntMatrix.from_dense([[6, 4, 2], [4, 8, 6], [2, 6, 10]])
    d = check_snf(A)
    want = smith_normal_form_sympy(sympy.Matrix(A.to_dense()), domain=sympy.ZZ)
    assert list(d.diagonal) == [abs(want[i, i]) for i in range(3) if want[i, i]]


def test_random_snf_thousand_instances():
    rng = random.Random(20261016)
    for _ in range(1000):
        n, m = rng.randint(1, 12), rng.randint(1, 12)
        A = IntMatrix.from_dense([[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
        d = check_snf(A)
        # independent determinant oracle for unimodularity
        assert abs(sympy.Matrix(d.U.to_dense()).det()) == 1
        assert abs(sympy.Matrix(d.V.to_dense()).det()) == 1


def test_random_snf_mod2():
    rng = random.Random(7)
    for _ in range(300):
        n, m = rng.randint(1, 10), rng.randint(1, 10)
        A = IntMatrix.from_dense([[rng.randint(0, 1) for _ in range(m)] for _ in range(n)])
        d = check_snf(A, Ring.Z2)
        cols = [gf2.bits_from_indices(r for r in range(n) if A[r, c] & 1) for c in range(m)]
        assert d.rank == gf2.rank(cols)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_matches_sympy(rows):
    assert determinant(IntMatrix.from_dense(rows)) == sympy.Matrix(rows).det()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_rank_is_transpose_invariant(n, m, data):
    rows = data.draw(st.lists(st.lists(st.integers(-5, 5), min_size=m, max_size=m), min_size=n, max_size=n))
    A = IntMatrix.from_dense(rows)
    assert rank(A) == rank(A.transpose()) == sympy.Matrix(rows).rank()


def test_unimodular_inverse():
    A = IntMatrix.from_dense([[2, 3], [1, 2]])
    inv = unimodular_inverse(A)
    assert A @ inv == IntMatrix.identity(2)
    with pytest.raises(NotUnimodularError):
        unimodular_inverse(IntMatrix.from_dense([[2, 0], [0, 1]]))
    # invertible mod 2 but not over Z
    assert unimodular_inverse(IntMatrix.from_dense([[3]]), Ring.Z2) == IntMatrix.identity(1)


def test_cokernel_and_fg_module():
    M = cokernel_presentation(IntMatrix.from_dense([[2, 0], [0, 0], [0, 3]]))
    assert M.free_rank == 1 and M.torsion == (6,)
    assert str(FGModule(Ring.Z, 2, (2,))) == "Z^2 + Z/2"
    with pytest.raises(ValueError):
        FGModule(Ring.Z, 0, (4, 2))
    with pytest.raises(ValueError):
        FGModule(Ring.Z2, 1, (2,))


def test_homology_of_pair_detects_torsion():
    # chain complex Z --2--> Z --0--> 0 has H = Z/2 in the middle
    H = homology_of_pair(IntMatrix.from_dense([[2]]), IntMatrix(0, 1))
    assert H.module.torsion == (2,) and H.rank == 0
    t, f = H.coordinates({0: 1})
    assert t == [1] and f == []
    assert H.is_boundary({0: 2})
    H2 = homology_of_pair(IntMatrix.from_dense([[2]]), IntMatrix(0, 1), Ring.Z2)
    assert H2.rank == 1


def test_coordinates_reject_non_cycles():
    d_out = IntMatrix.from_dense([[1, -1]])
    H = homology_of_pair(IntMatrix(2, 0), d_out)
    with pytest.raises(ValueError):
        H.coordinates({0: 1})
    assert H.coordinates({0: 1, 1: 1})[1] in ([1], [-1])


def test_gf2_echelon_and_kernel():
    cols = [0b011, 0b110, 0b101]
    red = gf2.reduce_columns(cols, track=True)
    assert red.rank == 2
    assert len(red.kernel) == 1
    k = red.kernel[0]
    acc = 0
    for j in gf2.indices_from_bits(k):
        acc ^= cols[j]
    assert acc == 0
