"""Seeded property suites shared by the test suite and ``verify-paper``.

Each suite returns a :class:`SuiteResult` counting its cases and keeping
the first few failures for the report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import List

from .feasibility import Infeasible, check_certificate, check_point, solve
from .mechanism import OutcomeFunction, TypeSpace, ic_equal, ic_set, is_ic_single, is_ic_single_minor
from .oracles import ic_set_direct, random_system, vertex_feasible
from .roberts import am_system, perturb_second_player, var

MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    failed: int = 0

    @property
    def ok(self) -> bool:
        return self.cases > 0 and self.failed == 0

    def record(self, passed: bool, detail) -> None:
        self.cases += 1
        if not passed:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(str(detail))


def _random_matrix(rng: random.Random, r: int, m: int, low: int = -3, high: int = 3):
    return [[rng.randint(low, high) for _ in range(m)] for _ in range(r)]


def perturbation_roundtrip(cases: int = 200, seed: int = 0) -> SuiteResult:
    """Random two-player instances with IC columns: the perturbed space works at unit weights, z = 0."""
    rng = random.Random(seed)
    out = SuiteResult("perturbation_roundtrip")
    while out.cases < cases:
        r1, r2, m = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        T1 = TypeSpace(_random_matrix(rng, r1, m))
        columns = ic_set(T1)
        cols = [rng.choice(columns) for _ in range(r2)]
        values = [cols[j][i] for i in range(r1) for j in range(r2)]
        g = OutcomeFunction((r1, r2), tuple(values), m)
        S2 = perturb_second_player(g, T1)
        system = am_system(g, [T1, S2], alphas=(1, 1))
        zero = {var("z", k): 0 for k in range(1, m + 1)}
        out.record(check_point(system, zero), (T1.matrix, g.values))
    return out


def oracle_equivalence(entries=(0, 1, 2), shapes=((2, 2), (2, 3), (3, 2))) -> SuiteResult:
    """Payment-system and determinant IC tests agree on every small matrix and outcome vector."""
    out = SuiteResult("oracle_equivalence")
    for r, m in shapes:
        for flat in product(entries, repeat=r * m):
            T = [list(flat[i * m:(i + 1) * m]) for i in range(r)]
            for g in product(range(1, m + 1), repeat=r):
                lp = is_ic_single(g, T) is not None
                out.record(lp == is_ic_single_minor(g, T), (T, g))
    return out


def _partner(rng: random.Random, T):
    """A second matrix likely to share T's IC set about half the time."""
    kind = rng.randrange(4)
    if kind == 0:  # row and column shifts preserve IC sets
        rows = [rng.randint(-3, 3) for _ in T]
        cols = [rng.randint(-3, 3) for _ in T[0]]
        return [[v + rows[i] + cols[j] for j, v in enumerate(row)] for i, row in enumerate(T)]
    if kind == 1:
        c = rng.randint(1, 3)
        return [[c * v for v in row] for row in T]
    if kind == 2:
        S = [list(row) for row in T]
        i, j = rng.randrange(len(S)), rng.randrange(len(S[0]))
        S[i][j] += rng.choice((-1, 1))
        return S
    return _random_matrix(rng, len(T), len(T[0]), 0, 3)


def ic_equal_agreement(pairs: int = 500, seed: int = 0) -> SuiteResult:
    """``ic_equal`` agrees with comparing IC sets computed from the payment system."""
    rng = random.Random(seed)
    out = SuiteResult("ic_equal_agreement")
    for _ in range(pairs):
        r, m = rng.randint(2, 3), rng.randint(2, 3)
        T = _random_matrix(rng, r, m, 0, 3)
        S = _partner(rng, T)
        out.record(bool(ic_equal(T, S)) == (ic_set_direct(T) == ic_set_direct(S)), (T, S))
    return out


def solver_soundness(cases: int = 1000, seed: int = 0) -> SuiteResult:
    """Random small systems: witnesses and certificates re-check and verdicts match vertex enumeration."""
    rng = random.Random(seed)
    out = SuiteResult("solver_soundness")
    for _ in range(cases):
        system = random_system(rng)
        result = solve(system)
        if isinstance(result, Infeasible):
            valid = check_certificate(system, result.certificate)
        else:
            valid = check_point(system, result.point)
        agree = result.feasible == vertex_feasible(system)
        out.record(valid and agree, [str(c) for c in system.constraints])
    return out


ALL_SUITES = (perturbation_roundtrip, oracle_equivalence, ic_equal_agreement, solver_soundness)
