from fractions import Fraction

import numpy as np
import pytest

from yangbax.errors import DimensionMismatch, NotAnOOperator, NotSkew, PairingUnavailable, TruncationTooLarge
from yangbax.liealg import adjoint_rep, coadjoint_rep, zero_rep
from yangbax.ooperator import (
    as_matrix,
    check_ooperator,
    check_skewness,
    cyb_on_vectors,
    edo_defect,
    edo_expression,
    eo_residual,
    graph_check,
    induced_bracket,
    make_ooperator,
    ooperator_to_rmatrix,
    random_matrix,
    rmatrix_to_ooperator,
    rtn_algebra,
    rtn_series,
    t3_form,
)
from yangbax.rmatrix import cyb, random_skew


def test_identity_on_adjoint_is_not_ooperator(S):
    T = as_matrix(np.eye(3, dtype=int))
    assert check_ooperator(S, adjoint_rep(S), T) != 0


def test_zero_operator(S):
    T = as_matrix([[0] * 3] * 3)
    op = make_ooperator(S, coadjoint_rep(S), T)
    assert op.is_ooperator()


def test_shape_checks(S):
    with pytest.raises(DimensionMismatch):
        check_ooperator(S, coadjoint_rep(S), as_matrix([[1, 0], [0, 1]]))


def test_rmatrix_correspondence(A, xy, S, ef):
    op = rmatrix_to_ooperator(A, xy)
    assert op.is_ooperator()
    assert not rmatrix_to_ooperator(S, ef).is_ooperator()


def test_t3_round_trip(A, xy, e3):
    for L, r in ((A, xy), (e3.space, e3)):
        form = t3_form(L, rmatrix_to_ooperator(L, r).T)
        assert form.S.equals(r)
        assert form.coboundary_ok and form.eo_residual == 0


def test_t3_rejects(S, A):
    with pytest.raises(NotSkew):
        t3_form(A, as_matrix([[1, 0], [0, 0]]))
    T = rmatrix_to_ooperator(S, random_skew(S, np.random.default_rng(3))).T
    if check_ooperator(S, coadjoint_rep(S), T) != 0:
        with pytest.raises(NotAnOOperator):
            t3_form(S, T)


def test_eo_holds_for_any_skew(S, rng):
    for _ in range(5):
        T = rmatrix_to_ooperator(S, random_skew(S, rng)).T
        assert eo_residual(S, T) == 0


def test_skewness_pairing():
    assert check_skewness(as_matrix([[0, 1], [-1, 0]]))
    assert not check_skewness(as_matrix([[0, 1], [1, 0]]))
    with pytest.raises(PairingUnavailable):
        check_skewness(as_matrix([[0, 1]]))
    with pytest.raises(PairingUnavailable):
        check_skewness(as_matrix([[0]]), pairing="killing")


def test_induced_bracket(A, xy):
    T = rmatrix_to_ooperator(A, xy).T
    D = induced_bracket(A, T)
    assert D.dim == 2 and D.basis_labels == ("x*", "y*")


def test_induced_bracket_requires_ooperator(S, ef):
    with pytest.raises(NotAnOOperator):
        induced_bracket(S, rmatrix_to_ooperator(S, ef).T)


@pytest.mark.parametrize("name", ["A", "S"])
def test_graph_iff_edo(name, request, rng):
    L = request.getfixturevalue(name)
    rep = coadjoint_rep(L)
    for _ in range(40):
        T = random_matrix(rng, L.dim, L.dim, density=0.4)
        assert graph_check(L, rep, T) == (check_ooperator(L, rep, T) == 0)


def test_graph_zero_rep(S):
    rep = zero_rep(S, 2)
    T = as_matrix([[1, 0], [0, 0], [0, 0]])
    # with the zero action the condition is [Tu, Tv] = 0
    assert graph_check(S, rep, T) and check_ooperator(S, rep, T) == 0
    T2 = as_matrix([[0, 0], [1, 0], [0, 1]])
    assert not graph_check(S, rep, T2)


def test_edo_defect_matches_expansion(S, rng):
    rep = coadjoint_rep(S)
    T = random_matrix(rng, 3, 3)
    u, v = [1, 0, 2], [0, Fraction(1, 2), -1]
    assert list(edo_defect(S, rep, T, u, v)) == list(edo_expression(S, rep, T, u, v))


def test_rtn_expansion_identity(A, rng):
    rep = coadjoint_rep(A)
    D = rtn_algebra(A, rep)
    for _ in range(10):
        T = random_matrix(rng, 2, 2)
        for n in range(3):
            r = ooperator_to_rmatrix(A, rep, T, n, D=D)
            for u, v in (([1, 0], [0, 1]), ([2, -1], [1, 3])):
                lhs = cyb_on_vectors(D, r, u, v)
                rhs = edo_expression(A, rep, T, u, v, n)
                assert list(lhs[:2]) == [3 * x for x in rhs]


def test_rtn_cyb_zero_for_ooperator(A, xy):
    op = rmatrix_to_ooperator(A, xy)
    D = rtn_algebra(A, op.rep)
    r = ooperator_to_rmatrix(A, op.rep, op.T, 2, D=D)
    assert cyb(D, r).is_zero()


def test_rtn_truncation_too_large(A):
    with pytest.raises(TruncationTooLarge):
        ooperator_to_rmatrix(A, coadjoint_rep(A), as_matrix([[0, 0], [0, 0]]), 3)


def test_rtn_series(A, xy):
    op = rmatrix_to_ooperator(A, xy)
    rows = rtn_series(A, op.rep, op.T, [1, 1], [1, -1])
    assert [row["n"] for row in rows] == [1, 2]
    assert rows[-1]["exact_zero"]
