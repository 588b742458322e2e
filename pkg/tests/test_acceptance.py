"""One test per acceptance criterion; each records a PASS/FAIL line.

Run through pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from contextlib import contextmanager
from fractions import Fraction

from tropmech.counterexamples import (CIRCUIT_WEIGHTS, _labelled_cert, corrupted_schedules,
                                      default_lambda_grid, shared_pair_system, symmetric_system,
                                      verify_counterexample_i, verify_counterexample_ii,
                                      verify_farkas_combination)
from tropmech.feasibility import InfeasCert, Infeasible, check_certificate, check_point, combine, solve
from tropmech.instances import (ARRANGEMENT, BOTH_SIDES, SHARED_PAIR, SYMMETRIC, THREE_PLAYER,
                                THREE_PLAYER_AXIS_ORDER, THREE_PLAYER_FIBERS)
from tropmech.mechanism import ic_set, is_ic_multi, is_ic_single
from tropmech.counterexamples import both_sides_system, circuit_system, three_player_system
from tropmech.reproduce import EXAMPLE_COMBINATION
from tropmech.roberts import am_check, am_refutation, am_system, perturb_second_player, var
from tropmech.suites import (ic_equal_agreement, oracle_equivalence, perturbation_roundtrip,
                             solver_soundness)

try:
    from conftest import ACCEPTANCE
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE = {}


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        ACCEPTANCE[number] = (False, title)
        print(f"criterion {number:2d}: FAIL  {title}")
        raise
    ACCEPTANCE[number] = (True, title)
    print(f"criterion {number:2d}: PASS  {title}")


def _infeasible_with_valid_certificate(system):
    res = solve(system)
    return isinstance(res, Infeasible) and check_certificate(system, res.certificate)


def test_criterion_01_ic_sets_both_sides():
    with criterion(1, "IC sets of the two-sided instance equal the listed 10 + 10 vectors"):
        assert ic_set(BOTH_SIDES.spaces["T1"]) == (
            (1, 1), (2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (4, 1), (4, 4))
        assert ic_set(BOTH_SIDES.spaces["T2"]) == (
            (1, 1), (1, 2), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4))


def test_criterion_02_ic_set_symmetric():
    with criterion(2, "IC set of the symmetric instance equals the listed 10 covectors"):
        got = ic_set(SYMMETRIC.spaces["T1"])
        assert got == ((1, 1, 1), (2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 3, 2),
                       (3, 1, 1), (3, 1, 2), (3, 3, 1), (3, 3, 2), (3, 3, 3))
        assert (3, 1, 2) in got


def test_criterion_03_worked_example_not_am():
    with criterion(3, "worked example: IC, not AM, certificate and 3,1,2,1 combination valid"):
        g = ARRANGEMENT.outcomes["g"]
        T1, T2 = ARRANGEMENT.spaces["T1"], ARRANGEMENT.spaces["T2"]
        assert is_ic_multi(g, [T1, T2])
        assert am_check(g, [T1, T2]) is None
        system, res = am_refutation(g, [T1, T2])
        assert check_certificate(system, res.certificate)
        four = {k: v for k, v in EXAMPLE_COMBINATION.items() if k.startswith("am:")}
        lhs, rhs = combine(system, _labelled_cert(system, four).multipliers)
        assert lhs == {var("alpha", 1): -1} and rhs == 0  # reads 0 >= alpha1
        assert check_certificate(system, _labelled_cert(system, EXAMPLE_COMBINATION))


def test_criterion_04_hand_built_space_is_am():
    with criterion(4, "hand-built second space: witness found, alpha = (1,1) with solver z passes"):
        g = ARRANGEMENT.outcomes["g"]
        T1, S2 = ARRANGEMENT.spaces["T1"], ARRANGEMENT.spaces["S2"]
        w = am_check(g, [T1, S2])
        assert w is not None and w.alphas == (1, 1)
        fixed = am_system(g, [T1, S2], alphas=(1, 1))
        assert check_point(fixed, {var("z", k): v for k, v in enumerate(w.z, start=1)})


def test_criterion_05_perturbation_round_trip():
    with criterion(5, "perturbation round trip on the worked example and 200 random instances"):
        g, T1 = ARRANGEMENT.outcomes["g"], ARRANGEMENT.spaces["T1"]
        S = perturb_second_player(g, T1)
        assert check_point(am_system(g, [T1, S], alphas=(1, 1)),
                           {var("z", k): 0 for k in range(1, 4)})
        assert am_check(g, [T1, S]) is not None
        res = perturbation_roundtrip(200, seed=5)
        assert res.cases == 200 and res.failed == 0, res.failures


def test_criterion_06_three_players():
    with criterion(6, "three-player instance: IC, joint system infeasible, ablation feasible"):
        g = THREE_PLAYER.outcomes["g"]
        spaces = [THREE_PLAYER.spaces[k] for k in THREE_PLAYER_AXIS_ORDER]
        assert is_ic_multi(g, spaces)
        for name, vectors in THREE_PLAYER_FIBERS.items():
            for vec in vectors:
                assert is_ic_single(vec, THREE_PLAYER.spaces[name]) is not None
        assert _infeasible_with_valid_certificate(three_player_system(g))
        assert solve(three_player_system(g, with_multifield=False)).feasible
        assert verify_counterexample_i().ok


def test_criterion_07_both_sides():
    with criterion(7, "two-sided instance: joint system infeasible, each ablation feasible"):
        assert _infeasible_with_valid_certificate(both_sides_system())
        assert solve(both_sides_system(first=False)).feasible
        assert solve(both_sides_system(second=False)).feasible
        assert verify_counterexample_ii().ok


def test_criterion_08_shared_pair():
    with criterion(8, "shared pair: infeasible on all 110 grid ratios, Farkas cases and corruptions"):
        listed = [Fraction(k, 10) for k in range(1, 101)] + [Fraction(10, k) for k in range(1, 11)]
        assert len(listed) == 110 and set(listed) == set(default_lambda_grid())
        g1, g2 = SHARED_PAIR.outcomes["g1"], SHARED_PAIR.outcomes["g2"]
        spaces = [SHARED_PAIR.spaces["T1"], SHARED_PAIR.spaces["T2"]]
        assert is_ic_multi(g1, spaces) and is_ic_multi(g2, spaces)
        bad = [lam for lam in listed if not _infeasible_with_valid_certificate(shared_pair_system(lam))]
        assert not bad, bad
        for case in ("ge", "lt"):
            assert verify_farkas_combination(case)
            corrupted = list(corrupted_schedules(case))
            assert len(corrupted) == 4
            for name, schedule in corrupted:
                assert not verify_farkas_combination(case, schedule), (case, name)


def test_criterion_09_symmetric():
    with criterion(9, "symmetric instance: unit weights infeasible, circuit valid, grid sweep infeasible"):
        system = symmetric_system(1)
        assert _infeasible_with_valid_certificate(system)
        circuit = circuit_system()
        assert check_certificate(circuit, InfeasCert({i: 1 for i in range(len(circuit))}))
        assert check_certificate(system, _labelled_cert(system, CIRCUIT_WEIGHTS))
        bad = [lam for lam in default_lambda_grid()
               if not _infeasible_with_valid_certificate(symmetric_system(lam))]
        assert not bad, bad


def test_criterion_10_oracle_equivalence():
    with criterion(10, "both IC tests agree exhaustively; ic_equal agrees on 500 random pairs"):
        res = oracle_equivalence()
        # (2,2): 81*4, (2,3): 729*9, (3,2): 729*8
        assert res.cases == 81 * 4 + 729 * 9 + 729 * 8
        assert res.failed == 0, res.failures
        pairs = ic_equal_agreement(500, seed=10)
        assert pairs.cases == 500 and pairs.failed == 0, pairs.failures


def test_criterion_11_solver_soundness():
    with criterion(11, "1000 random systems: witnesses and certificates re-check, match vertex oracle"):
        res = solver_soundness(1000, seed=11)
        assert res.cases == 1000 and res.failed == 0, res.failures


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    sys.exit(1 if failed else 0)
