import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropmech.errors import NotIC, ShapeMismatch
from tropmech.feasibility import EQ, GT, check_certificate, check_point, solve
from tropmech.instances import ARRANGEMENT, BOTH_SIDES, THREE_PLAYER
from tropmech.mechanism import OutcomeFunction, TypeSpace, ic_set, is_ic_multi, is_ic_single
from tropmech.reproduce import EXAMPLE_COMBINATION
from tropmech.counterexamples import _labelled_cert
from tropmech.roberts import (AMWitness, am_check, am_refutation, am_system, check_am_witness,
                              encode_ic_equality, perturb_second_player, var)

G = ARRANGEMENT.outcomes["g"]
T1, T2, S2 = (ARRANGEMENT.spaces[k] for k in ("T1", "T2", "S2"))


def zero_z(m):
    return {var("z", k): 0 for k in range(1, m + 1)}


def test_worked_example_is_not_an_affine_maximizer():
    assert am_check(G, [T1, T2]) is None
    system, res = am_refutation(G, [T1, T2])
    assert check_certificate(system, res.certificate)


def test_hand_combination_gives_zero_at_least_alpha1():
    system = am_system(G, [T1, T2])
    assert check_certificate(system, _labelled_cert(system, EXAMPLE_COMBINATION))
    # without alpha1 >= 1 the four inequalities only give 0 >= alpha1
    four = {k: v for k, v in EXAMPLE_COMBINATION.items() if k.startswith("am:")}
    assert not check_certificate(system, _labelled_cert(system, four))


def test_hand_built_second_space_works():
    w = am_check(G, [T1, S2])
    assert w is not None and w.alphas == (1, 1)
    assert check_am_witness(G, [T1, S2], w)
    fixed = am_system(G, [T1, S2], alphas=(1, 1))
    assert check_point(fixed, {var("z", k): v for k, v in enumerate(w.z, start=1)})


def test_perturbation_of_worked_example():
    S = perturb_second_player(G, T1)
    assert check_point(am_system(G, [T1, S], alphas=(1, 1)), zero_z(3))
    w = am_check(G, [T1, S])
    assert w is not None and w.alphas == (1, 1)


def test_perturbation_when_both_sides_block_stronger_claim():
    g, T = BOTH_SIDES.outcomes["g"], BOTH_SIDES.spaces["T1"]
    S = perturb_second_player(g, T)
    assert check_point(am_system(g, [T, S], alphas=(1, 1)), zero_z(4))


def test_perturbation_of_constant_g():
    g = OutcomeFunction.nested([[1, 1], [1, 1], [1, 1]], 3)
    S = perturb_second_player(g, T1)
    assert check_point(am_system(g, [T1, S], alphas=(1, 1)), zero_z(3))


def test_perturbation_needs_ic_columns():
    g = OutcomeFunction.nested([[1], [2]], 4)
    with pytest.raises(NotIC):
        perturb_second_player(g, BOTH_SIDES.spaces["T1"])
    with pytest.raises(ShapeMismatch):
        perturb_second_player(OutcomeFunction.vector([1, 1, 1], 3), T1)


def test_single_player_affine_maximizer():
    g = OutcomeFunction.vector([1, 2, 3], 3)
    w = am_check(g, [T1])
    assert (w is not None) == (is_ic_single(g.values, T1) is not None)
    if w is not None:
        assert w.alphas == (1,)


def test_witness_with_nonpositive_weight_is_rejected():
    assert not check_am_witness(G, [T1, S2], AMWitness((0, 1), (0, 0, 0)))


def test_encoding_examples():
    s = encode_ic_equality(THREE_PLAYER.spaces["T1"], "S")
    c = s.constraints[s.find("mf:S:12|12:12")]
    assert c.relation == GT
    assert dict(c.coeffs) == {"S[1,2]": 1, "S[2,1]": 1, "S[1,1]": -1, "S[2,2]": -1}
    z = encode_ic_equality([[0, 0], [0, 0]], "S")
    c = z.constraints[z.find("mf:S:12|12:21")]
    assert c.relation == EQ


@pytest.mark.parametrize("space", [THREE_PLAYER.spaces["T1"], BOTH_SIDES.spaces["T1"],
                                   BOTH_SIDES.spaces["T2"], T1, T2])
def test_space_satisfies_its_own_encoding(space):
    s = encode_ic_equality(space, "S")
    point = {var("S", i, k): v for i, row in enumerate(space.matrix, start=1)
             for k, v in enumerate(row, start=1)}
    assert check_point(s, point)


small = st.tuples(st.integers(2, 3), st.integers(2, 3)).flatmap(
    lambda rm: st.lists(st.lists(st.integers(0, 2), min_size=rm[1], max_size=rm[1]),
                        min_size=rm[0], max_size=rm[0]))


@given(small, small)
def test_encoding_is_exact_on_other_matrices(T, S):
    if (len(T), len(T[0])) != (len(S), len(S[0])):
        return
    system = encode_ic_equality(T, "S")
    point = {var("S", i, k): v for i, row in enumerate(S, start=1) for k, v in enumerate(row, start=1)}
    assert check_point(system, point) == (ic_set(S) == ic_set(T))


@given(small)
def test_solved_encoding_reproduces_ic_set(T):
    res = solve(encode_ic_equality(T, "S"))
    assert res.feasible
    S = [[res.point[var("S", i, k)] for k in range(1, len(T[0]) + 1)] for i in range(1, len(T) + 1)]
    assert ic_set(S) == ic_set(T)


@given(st.integers(0, 10**6))
def test_affine_maximizers_are_ic_and_rescale(seed):
    rng = random.Random(seed)
    r1, r2, m = rng.randint(1, 3), rng.randint(1, 3), rng.randint(2, 3)
    A = TypeSpace([[rng.randint(-2, 2) for _ in range(m)] for _ in range(r1)])
    B = TypeSpace([[rng.randint(-2, 2) for _ in range(m)] for _ in range(r2)])
    g = OutcomeFunction((r1, r2), tuple(rng.randint(1, m) for _ in range(r1 * r2)), m)
    w = am_check(g, [A, B])
    if w is None:
        return
    assert is_ic_multi(g, [A, B])
    assert min(w.alphas) == 1
    c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    assert check_am_witness(g, [A, B], AMWitness(tuple(c * a for a in w.alphas),
                                                 tuple(c * v for v in w.z)))
