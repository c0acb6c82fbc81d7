"""Property checks driven by hypothesis (skipped when it is not installed)."""

from fractions import Fraction

import numpy as np
import pytest

hyp = pytest.importorskip("hypothesis")
st = pytest.importorskip("hypothesis.strategies")
from hypothesis import given, settings  # noqa: E402

from yangbax.liealg import abelian, aff1, gl_truncation, sl2  # noqa: E402
from yangbax.pnorm import norm_interval  # noqa: E402
from yangbax.rmatrix import check_stcy, cyb  # noqa: E402
from yangbax.tensor import ad_action, alt, contract_pair, make_tensor, skew_part, tau, tensor2, tensor3  # noqa: E402

ALGEBRAS = [sl2(), aff1(), abelian(3), gl_truncation(2)]
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def tensors(draw, order=2, skew=False):
    L = draw(st.sampled_from(ALGEBRAS))
    idx = st.tuples(*[st.integers(0, L.dim - 1)] * order)
    entries = draw(st.dictionaries(idx, fractions, max_size=8))
    if skew:
        entries = {(i, j): v for (i, j), v in entries.items() if i != j}
        out = {}
        for (i, j), v in entries.items():
            out[(i, j)] = out.get((i, j), 0) + v
            out[(j, i)] = out.get((j, i), 0) - v
        entries = out
    t = make_tensor((L,) * order, entries, mode="exact")
    return L, t


@settings(max_examples=60, deadline=None)
@given(tensors())
def test_tau_involution(data):
    _, t = data
    assert tau(tau(t)).equals(t)
    assert skew_part(skew_part(t)).equals(skew_part(t))


@settings(max_examples=40, deadline=None)
@given(tensors(), st.data())
def test_ad_commutes_with_tau(data, more):
    L, t = data
    i = more.draw(st.integers(0, L.dim - 1))
    assert ad_action(L, L.unit(i), tau(t)).equals(tau(ad_action(L, L.unit(i), t)))


@settings(max_examples=40, deadline=None)
@given(tensors(order=3), st.data())
def test_ad_commutes_with_alt(data, more):
    L, t = data
    i = more.draw(st.integers(0, L.dim - 1))
    assert ad_action(L, L.unit(i), alt(t)).equals(alt(ad_action(L, L.unit(i), t)))


@settings(max_examples=40, deadline=None)
@given(tensors(), fractions)
def test_cyb_quadratic(data, c):
    L, r = data
    assert cyb(L, r * c).equals(cyb(L, r) * (c * c))


@settings(max_examples=40, deadline=None)
@given(tensors(skew=True))
def test_stcy_property(data):
    L, a = data
    assert check_stcy(L, a).passed


@settings(max_examples=40, deadline=None)
@given(tensors(), fractions, st.data())
def test_contract_pair_bilinear(data, c, more):
    L, t = data
    vec = st.lists(fractions, min_size=L.dim, max_size=L.dim)
    a, a2, b = more.draw(vec), more.draw(vec), more.draw(vec)
    combo = [x + c * y for x, y in zip(a, a2)]
    assert contract_pair(combo, b, t) == contract_pair(a, b, t) + c * contract_pair(a2, b, t)


floats = st.floats(min_value=-10, max_value=10, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["euclidean", "sup", "l1"]),
       st.lists(floats, min_size=3, max_size=3), st.lists(floats, min_size=3, max_size=3), floats)
def test_vector_norm_axioms(tag, x, y, c):
    L = abelian(3, tag)
    x, y = np.array(x), np.array(y)
    assert L.vector_norm(x) >= 0
    assert L.vector_norm(x + y) <= L.vector_norm(x) + L.vector_norm(y) + 1e-9
    assert L.vector_norm(c * x) == pytest.approx(abs(c) * L.vector_norm(x), abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["euclidean", "sup", "l1"]),
       st.lists(floats, min_size=2, max_size=2), st.lists(floats, min_size=2, max_size=2))
def test_cross_norm_property(tag, x, y):
    L = abelian(2, tag)
    t = make_tensor((L, L), {(i, j): x[i] * y[j] for i in range(2) for j in range(2)
                             if x[i] * y[j] != 0}, mode="float")
    iv = norm_interval(t)
    expected = L.vector_norm(np.array(x)) * L.vector_norm(np.array(y))
    assert iv.lower == pytest.approx(expected, rel=1e-6, abs=1e-9)
    assert iv.upper == pytest.approx(expected, rel=1e-6, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.lists(floats, min_size=9, max_size=9), floats)
def test_interval_homogeneous_and_ordered(vals, c):
    L = abelian(3)
    t = make_tensor((L, L), {(k // 3, k % 3): v for k, v in enumerate(vals) if v != 0}, mode="float")
    a, b = norm_interval(t), norm_interval(t * c)
    assert a.lower <= a.upper + 1e-8
    assert b.upper == pytest.approx(abs(c) * a.upper, rel=1e-6, abs=1e-8)


def test_tensor3_alt_cyclic():
    L = sl2()
    t = tensor3(L, {(0, 1, 2): Fraction(1)})
    assert alt(t).equals(alt(alt(t)) * Fraction(1, 3))
    assert tensor2(L, {}).is_zero()
