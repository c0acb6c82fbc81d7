from fractions import Fraction

import numpy as np
import pytest

from yangbax.errors import (
    AntisymmetryViolation,
    DimensionMismatch,
    EmptyList,
    IndexOutOfRange,
    InvalidRepresentation,
    JacobiViolation,
)
from yangbax.liealg import (
    abelian,
    ad_matrix,
    adjoint_rep,
    aff1,
    bracket,
    build_lie_algebra,
    build_representation,
    coad_matrix,
    coadjoint_rep,
    direct_sum,
    gl_truncation,
    jacobi_residual,
    semidirect_product,
    sl2,
    zero_rep,
)


def test_sl2_table_is_valid(S):
    assert S.dim == 3
    assert jacobi_residual(S.dim, S.structure_constants) is None


def test_abelian_valid():
    L = abelian(4)
    assert L.dim == 4 and not L.structure_constants


def test_antisymmetry_violation():
    with pytest.raises(AntisymmetryViolation):
        build_lie_algebra(2, [(0, 1, 1, 1), (1, 0, 1, 1)])


def test_diagonal_bracket_rejected():
    with pytest.raises(AntisymmetryViolation):
        build_lie_algebra(2, [(0, 0, 1, 1)])


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        build_lie_algebra(2, [(0, 2, 1, 1)])


def test_jacobi_violation():
    # [a,b] = c, [b,c] = a, [c,a] = c breaks Jacobi
    with pytest.raises(JacobiViolation) as info:
        build_lie_algebra(3, [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 2, 1)])
    assert (info.value.i, info.value.j, info.value.k) == (0, 1, 2)


def test_bad_dimension():
    with pytest.raises(DimensionMismatch):
        build_lie_algebra(0, [])


def test_bracket_examples(S, A):
    e, f, h = S.vec(e=1), S.vec(f=1), S.vec(h=1)
    assert list(bracket(S, e, f)) == list(h)
    x = S.vec(h=2, e=-1, f=Fraction(1, 3))
    assert not any(bracket(S, x, x))
    assert list(bracket(A, A.vec(x=1), A.vec(y=3))) == [0, 3]


def test_bracket_dimension_mismatch(S):
    with pytest.raises(DimensionMismatch):
        bracket(S, [1, 0], [0, 1, 0])


def test_bracket_bilinear_antisymmetric(S, rng):
    for _ in range(20):
        x, y, z = (rng.integers(-3, 4, size=3) for _ in range(3))
        x, y, z = ([Fraction(int(v)) for v in w] for w in (x, y, z))
        assert list(bracket(S, x, y)) == list(-bracket(S, y, x))
        xz = [a + 2 * b for a, b in zip(x, z)]
        assert list(bracket(S, xz, y)) == list(bracket(S, x, y) + 2 * bracket(S, z, y))


def test_ad_matrices(S):
    assert not any(ad_matrix(abelian(3), 1).ravel())
    assert [ad_matrix(S, 0)[i, i] for i in range(3)] == [0, 2, -2]
    for i in range(3):
        assert not any((coad_matrix(S, i) + ad_matrix(S, i).T).ravel())
    with pytest.raises(IndexOutOfRange):
        ad_matrix(S, 3)


def test_ad_matrix_columns_are_brackets(S):
    for i in range(3):
        for j in range(3):
            assert list(ad_matrix(S, i)[:, j]) == list(bracket(S, S.unit(i), S.unit(j)))


def test_semidirect_abelian_zero_rep():
    L = abelian(2)
    D = semidirect_product(L, zero_rep(L, 3))
    assert D.dim == 5 and not D.structure_constants


def test_semidirect_aff1_coadjoint(A):
    D = semidirect_product(A, coadjoint_rep(A))
    assert D.dim == 4
    assert jacobi_residual(D.dim, D.structure_constants) is None
    assert D.norm.kind == "sum"


def test_semidirect_sl2_adjoint(S):
    D = semidirect_product(S, adjoint_rep(S))
    x = np.array([Fraction(v) for v in (0, 1, 0, 0, 0, 0)], dtype=object)
    y = np.array([Fraction(v) for v in (0, 0, 0, 0, 0, 1)], dtype=object)
    # (e, 0) with (0, f) gives (0, [e, f]) = (0, h)
    assert list(bracket(D, x, y)) == [0, 0, 0, 1, 0, 0]


def test_semidirect_norm_is_sum(A):
    D = semidirect_product(A, coadjoint_rep(A))
    v = np.array([3.0, 4.0, 1.0, 0.0])
    assert D.vector_norm(v) == pytest.approx(6.0)


def test_invalid_representation(S):
    bad = [np.eye(2, dtype=int)] * 3
    with pytest.raises(InvalidRepresentation):
        build_representation(S, bad)
    with pytest.raises(InvalidRepresentation):
        build_representation(S, [np.eye(2, dtype=int)] * 2)


def test_valid_custom_representation(S):
    # standard 2-dim representation of sl2
    h = [[1, 0], [0, -1]]
    e = [[0, 1], [0, 0]]
    f = [[0, 0], [1, 0]]
    R = build_representation(S, [h, e, f])
    assert R.module_dim == 2
    D = semidirect_product(S, R)
    assert D.dim == 5


def test_direct_sum(S, A):
    with pytest.raises(EmptyList):
        direct_sum([])
    single = direct_sum([S])
    assert single.dim == 3 and dict(single.structure_constants) == dict(S.structure_constants)
    assert not direct_sum([abelian(2), abelian(3)]).structure_constants
    D = direct_sum([S, A], [1, Fraction(1, 2)])
    assert D.weights == (1, Fraction(1, 2))
    x = D.unit(1)  # e in the sl2 block
    y = D.unit(4)  # y in the aff1 block
    assert not any(bracket(D, x, y))
    assert D.norm.kind == "max"


def test_gl_truncation_small():
    assert gl_truncation(1).dim == 1 and not gl_truncation(1).structure_constants
    G = gl_truncation(2)
    out = bracket(G, G.unit(1), G.unit(2))
    assert list(out) == [1, 0, 0, -1]


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_gl_truncation_matches_matrix_commutators(N):
    G = gl_truncation(N)
    mats = [np.zeros((N, N), dtype=int) for _ in range(N * N)]
    for i in range(N):
        for j in range(N):
            mats[i * N + j][i, j] = 1
    for a in range(N * N):
        for b in range(N * N):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            got = bracket(G, G.unit(a), G.unit(b))
            assert [int(v) for v in got] == list(comm.ravel())


def test_gl3_jacobi_exhaustive():
    G = gl_truncation(3)
    assert jacobi_residual(G.dim, G.structure_constants) is None


def test_continuity_constant_fields(S):
    assert S.basis_witness == pytest.approx(2.0)
    assert S.continuity_constant >= S.basis_witness


def test_sup_norm_needs_certified_constant():
    # basis-pair maximum is 2, but this pair reaches 4
    S = sl2("sup")
    x = np.array([1.0, 1.0, 1.0])
    y = np.array([1.0, -1.0, 1.0])
    ratio = S.vector_norm(bracket(S, x, y)) / (S.vector_norm(x) * S.vector_norm(y))
    assert ratio > S.basis_witness
    assert ratio <= S.continuity_constant


NORM_CASES = [
    (sl2, "euclidean"), (sl2, "sup"), (sl2, "l1"),
    (aff1, "euclidean"), (aff1, "sup"), (aff1, "l1"),
    (lambda norm: gl_truncation(3, norm), "euclidean"),
    (lambda norm: gl_truncation(3, norm), "sup"),
    (lambda norm: gl_truncation(3, norm), "l1"),
    (lambda norm: gl_truncation(3, norm), "operator"),
]


@pytest.mark.parametrize("make, norm", NORM_CASES)
def test_continuity_bound_random_pairs(make, norm):
    L = make(norm)
    r = np.random.default_rng(7)
    for _ in range(1000):
        x, y = r.standard_normal(L.dim), r.standard_normal(L.dim)
        lhs = L.vector_norm(bracket(L, x, y))
        assert lhs <= L.continuity_constant * L.vector_norm(x) * L.vector_norm(y) * (1 + 1e-9)


def test_operator_norm_only_for_gl():
    from yangbax.errors import WrongNormSpec
    with pytest.raises(WrongNormSpec):
        sl2("operator")


def test_structure_is_immutable(S):
    with pytest.raises(TypeError):
        S.structure_constants[(0, 1)] = ()
