from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tropmech.errors import InvalidOutcome, NonpositiveAlpha, ShapeMismatch, TooLarge
from tropmech.instances import ARRANGEMENT, BOTH_SIDES, SYMMETRIC, THREE_PLAYER
from tropmech.mechanism import (OutcomeFunction, TypeSpace, ic_equal, ic_set, is_ic_multi,
                                is_ic_single, is_ic_single_minor, minkowski_combine, multifield)
from tropmech.oracles import ic_set_direct

T1_42 = THREE_PLAYER.spaces["T1"]
T1_43 = BOTH_SIDES.spaces["T1"]
T2_43 = BOTH_SIDES.spaces["T2"]


def test_outcome_function_validation():
    with pytest.raises(InvalidOutcome):
        OutcomeFunction.vector([0, 1], 2)
    with pytest.raises(ShapeMismatch):
        OutcomeFunction((2, 2), (1, 1, 1), 2)
    with pytest.raises(ShapeMismatch):
        OutcomeFunction.nested([[1, 2], [1]], 2)


def test_outcome_indexing_and_fibers():
    g = ARRANGEMENT.outcomes["g"]
    assert g[0, 0] == 2 and g[2, 1] == 3
    assert g.to_nested() == [[2, 1, 1], [2, 1, 2], [3, 3, 3]]
    cols = [vec for _, vec in g.fibers(0)]
    assert cols == [(2, 2, 3), (1, 1, 3), (1, 2, 3)]


def test_minkowski_sum():
    T1, T2, S2 = (ARRANGEMENT.spaces[k] for k in ("T1", "T2", "S2"))
    C = minkowski_combine([T1, T2])
    assert C.r == 9 and C.matrix[0] == (0, 7, -2)
    assert minkowski_combine([T1, S2]).matrix[0] == (0, 7, Fraction(73, 10))
    assert minkowski_combine([T1]).matrix == T1.matrix
    with pytest.raises(NonpositiveAlpha):
        minkowski_combine([T1, T2], alphas=[1, 0])


def test_single_player_examples():
    assert is_ic_single((2, 1), T1_42) is not None
    assert is_ic_single_minor((2, 1), T1_42)
    assert is_ic_single_minor((1, 5), T1_42)
    assert is_ic_single((1, 2), T1_43) is None
    assert not is_ic_single_minor((1, 2), T1_43)
    assert is_ic_single((4, 4), T1_43) is not None


def test_single_row_space_is_always_ic():
    assert ic_set([[0, 2, 3]]) == ((1,), (2,), (3,))
    for g in [(1,), (2,), (3,)]:
        assert is_ic_single_minor(g, [[0, 2, 3]])


def test_ic_sets_of_instances():
    assert ic_set(T1_43) == BOTH_SIDES.expected_ic["T1"]
    assert ic_set(T2_43) == BOTH_SIDES.expected_ic["T2"]
    assert ic_set(SYMMETRIC.spaces["T1"]) == SYMMETRIC.expected_ic["T1"]


def test_ic_set_cap():
    with pytest.raises(TooLarge):
        ic_set(T1_43, cap=15)


def test_multifield_examples():
    mf = multifield(T1_43)
    assert mf[((1, 2), (2, 4))] == ((1, 2),)
    assert multifield(T1_42)[((1, 2), (1, 2))] == ((2, 1),)
    zero = multifield([[0, 0], [0, 0]])
    assert all(len(v) == (1 if len(k[0]) == 1 else 2) for k, v in zero.items())


def test_ic_equal_examples():
    assert ic_equal(T1_43, T1_43.scaled(Fraction(7, 3)))
    assert ic_equal(T1_43, T1_43.shifted([5, -1, 0, "1/2"]))
    res = ic_equal(T1_43, T2_43)
    assert not res and res.minor is not None and res.left != res.right
    with pytest.raises(ShapeMismatch):
        ic_equal(T1_43, [[0, 1]])


def test_multi_player_examples():
    g = ARRANGEMENT.outcomes["g"]
    T1, T2 = ARRANGEMENT.spaces["T1"], ARRANGEMENT.spaces["T2"]
    assert is_ic_multi(g, [T1, T2])
    # change entry (1,1) from 2 to 1 and compare with a direct fiber check
    h = OutcomeFunction.nested([[1, 1, 1], [2, 1, 2], [3, 3, 3]], 3)
    direct = all(is_ic_single(v, T1) is not None for _, v in h.fibers(0)) and \
        all(is_ic_single(v, T2) is not None for _, v in h.fibers(1))
    assert is_ic_multi(h, [T1, T2]) == direct
    with pytest.raises(ShapeMismatch):
        is_ic_multi(g, [T1])


small = st.tuples(st.integers(1, 3), st.integers(1, 3)).flatmap(
    lambda rm: st.lists(st.lists(st.integers(0, 3), min_size=rm[1], max_size=rm[1]),
                        min_size=rm[0], max_size=rm[0]))


@given(small)
def test_ic_set_matches_payment_oracle(T):
    assert ic_set(T) == ic_set_direct(T)


@given(small, st.fractions(min_value=Fraction(1, 5), max_value=5),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_ic_set_is_invariant_under_scaling_and_shift(T, alpha, shift):
    space = TypeSpace(T)
    assert ic_set(space.scaled(alpha)) == ic_set(space)
    assert ic_set(space.shifted(shift[:space.m])) == ic_set(space)


@given(small, small)
def test_ic_equal_decides_ic_set_equality(A, B):
    if (len(A), len(A[0])) != (len(B), len(B[0])):
        return
    assert bool(ic_equal(A, B)) == (ic_set(A) == ic_set(B))


@given(small)
def test_constant_g_is_ic(T):
    for k in range(1, len(T[0]) + 1):
        assert is_ic_single((k,) * len(T), T) is not None
