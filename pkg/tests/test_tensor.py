from fractions import Fraction

import numpy as np
import pytest

from yangbax.errors import DimensionMismatch, IndexOutOfRange, ModeMismatch, NonSquareFactors, SpaceMismatch
from yangbax.liealg import abelian
from yangbax.rmatrix import random_tensor2
from yangbax.tensor import (
    ad_action,
    alt,
    contract3,
    contract_left,
    contract_pair,
    elementary,
    make_tensor,
    rotate,
    skew_part,
    sym_part,
    tau,
    tensor2,
    tensor3,
)


def test_canonical_form_drops_zeros(S):
    t = tensor2(S, {(0, 1): 0, (1, 2): Fraction(1, 2)})
    assert list(t.entries) == [(1, 2)]


def test_index_validation(S):
    with pytest.raises(IndexOutOfRange):
        tensor2(S, {(0, 3): 1})
    with pytest.raises(DimensionMismatch):
        tensor2(S, {(0, 1, 2): 1})


def test_mixed_modes_rejected(S):
    with pytest.raises(ModeMismatch):
        tensor2(S, {(0, 1): 1, (1, 0): 0.5})
    with pytest.raises(ModeMismatch):
        tensor2(S, {(0, 1): 1}) + tensor2(S, {(0, 1): 0.5})


def test_space_mismatch(S, A):
    with pytest.raises(SpaceMismatch):
        tensor2(S, {(0, 1): 1}) + tensor2(A, {(0, 1): 1})


def test_tau(S):
    t = tensor2(S, {(1, 2): 1})
    assert dict(tau(t).entries) == {(2, 1): 1}


def test_skew_of_symmetric_is_zero(S):
    t = tensor2(S, {(1, 2): 3, (2, 1): 3, (0, 0): 1})
    assert skew_part(t).is_zero()


def test_skew_part_standard(S, std):
    assert dict(skew_part(std).entries) == {(1, 2): Fraction(1, 2), (2, 1): Fraction(-1, 2)}
    assert (skew_part(std) + sym_part(std)).equals(std)


def test_non_square_factors(S, A):
    t = make_tensor((S, A), {(0, 1): 1})
    with pytest.raises(NonSquareFactors):
        skew_part(t)
    with pytest.raises(NonSquareFactors):
        alt(make_tensor((S, S, A), {(0, 1, 1): 1}))


def test_alt_definition(S):
    t = tensor3(S, {(0, 1, 2): 1})
    assert dict(alt(t).entries) == {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}


def test_alt_of_cyclic_invariant(S):
    t = alt(tensor3(S, {(0, 1, 2): 2, (1, 1, 0): 1}))
    assert alt(t).equals(t * 3)


def test_alt_idempotent_up_to_factor(S, rng):
    entries = {tuple(int(i) for i in rng.integers(0, 3, size=3)): Fraction(int(rng.integers(1, 5)))
               for _ in range(8)}
    t = tensor3(S, entries)
    assert alt(alt(t)).equals(alt(t) * 3)


def test_ad_action_examples(S):
    assert ad_action(abelian(2), [1, 1], tensor2(abelian(2), {(0, 1): 1})).is_zero()
    assert ad_action(S, S.vec(h=1), tensor2(S, {(1, 2): 1})).is_zero()
    out = ad_action(S, S.vec(e=1), tensor2(S, {(0, 0): 1}))
    assert dict(out.entries) == {(0, 1): -2, (1, 0): -2}


def test_ad_action_space_mismatch(S, A):
    with pytest.raises(SpaceMismatch):
        ad_action(S, S.vec(e=1), tensor2(A, {(0, 1): 1}))


def test_contractions(S, A, xy):
    assert list(contract_left(A.unit(0), xy)) == [0, 1]
    assert not any(contract_left([0, 0], xy))
    assert contract_pair(S.unit(1), S.unit(2), tensor2(S, {(1, 2): 1})) == 1
    t = tensor3(S, {(0, 1, 2): 5})
    assert contract3(S.unit(0), S.unit(1), S.unit(2), t) == 5
    with pytest.raises(DimensionMismatch):
        contract_left([1, 0, 0], xy)


def test_tau_involution_and_skew_idempotent(S, gl3, rng):
    for _ in range(200):
        L = S if rng.random() < 0.5 else gl3
        t = random_tensor2(L, rng, density=0.4)
        assert tau(tau(t)).equals(t)
        assert skew_part(skew_part(t)).equals(skew_part(t))


@pytest.mark.parametrize("name", ["S", "A", "gl2"])
def test_ad_commutes_with_tau_and_alt(name, request, rng):
    L = request.getfixturevalue(name)
    for _ in range(5):
        t = random_tensor2(L, rng, density=0.6)
        t3 = tensor3(L, {tuple(int(i) for i in rng.integers(0, L.dim, size=3)): Fraction(int(rng.integers(1, 4)))
                         for _ in range(6)})
        for i in range(L.dim):
            x = L.unit(i)
            assert ad_action(L, x, tau(t)).equals(tau(ad_action(L, x, t)))
            assert ad_action(L, x, alt(t3)).equals(alt(ad_action(L, x, t3)))
            assert ad_action(L, x, rotate(t3)).equals(rotate(ad_action(L, x, t3)))


def test_contract_pair_bilinear(S, rng):
    t = random_tensor2(S, rng)
    t2 = random_tensor2(S, rng)
    a, a2, b = ([Fraction(int(v)) for v in rng.integers(-3, 4, size=3)] for _ in range(3))
    c = Fraction(2, 3)
    lin_a = [x + c * y for x, y in zip(a, a2)]
    assert contract_pair(lin_a, b, t) == contract_pair(a, b, t) + c * contract_pair(a2, b, t)
    assert contract_pair(a, b, t + t2 * c) == contract_pair(a, b, t) + c * contract_pair(a, b, t2)


def test_elementary_and_dense(S):
    t = elementary(S, [1, 2, 0], [0, 0, 3])
    assert dict(t.entries) == {(0, 2): 3, (1, 2): 6}
    d = t.to_dense()
    assert d.shape == (3, 3) and d[1, 2] == 6.0
    assert t.as_float().mode == "float"


def test_scalar_multiplication_and_negation(S, std):
    assert (std * 0).is_zero()
    assert (-std + std).is_zero()
    assert (2 * std).equals(std + std)


def test_float_tolerance(S):
    t = tensor2(S, {(0, 1): 1e-14})
    assert not t.is_zero()
    assert t.is_zero(1e-12)
    assert np.isclose(t.max_entry(), 1e-14)
