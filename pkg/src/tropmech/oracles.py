"""Brute-force reference answers used to cross-check the fast code paths.

These are deliberately naive and only meant for tiny inputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

from .feasibility import EQ, GE, GT, LinearSystem
from .mechanism import as_space, is_ic_single

Row = List[Fraction]


def _rank(rows: Sequence[Row]) -> int:
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c] / p[c]
                work[i] = [a - f * b for a, b in zip(work[i], p)]
        rank += 1
    return rank


def _particular(rows: Sequence[Row], rhs: Sequence[Fraction], n: int) -> Optional[List[Fraction]]:
    """One solution of ``rows x = rhs`` (free unknowns set to zero), or ``None``."""
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    rank = 0
    for c in range(n):
        pivot = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank]
        inv = 1 / p[c]
        work[rank] = p = [v * inv for v in p]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], p)]
        pivots.append(c)
        rank += 1
    if any(row[-1] for row in work[rank:]):
        return None
    x = [Fraction(0)] * n
    for k, c in enumerate(pivots):
        x[c] = work[k][-1]
    return x


def vertex_feasible(system: LinearSystem) -> bool:
    """Feasibility by enumerating minimal faces.

    Strict rows ``a.x > b`` become ``a.x - t >= b`` with ``t <= 1``. The
    maximum of ``t`` is reached on a minimal face, and every minimal face is
    the solution set of a linearly independent choice of tight rows, so it
    suffices to try each such choice and keep the feasible candidates.
    """
    names = list(system.variables)
    strict = any(c.relation == GT for c in system.constraints)
    n = len(names) + (1 if strict else 0)
    col = {v: j for j, v in enumerate(names)}
    eq_rows, eq_rhs, ineq_rows, ineq_rhs = [], [], [], []
    for c in system.constraints:
        row = [Fraction(0)] * n
        for name, coef in c.coeffs.items():
            row[col[name]] = coef
        if c.relation == GT:
            row[-1] = Fraction(-1)
        if c.relation == EQ:
            eq_rows.append(row)
            eq_rhs.append(c.rhs)
        else:
            ineq_rows.append(row)
            ineq_rhs.append(c.rhs)
    if strict:
        cap = [Fraction(0)] * n
        cap[-1] = Fraction(-1)
        ineq_rows.append(cap)
        ineq_rhs.append(Fraction(-1))
    if n == 0:
        return all(b <= 0 for b in ineq_rhs) and all(b == 0 for b in eq_rhs) and all(
            c.relation != GT or c.rhs < 0 for c in system.constraints)

    full = _rank(eq_rows + ineq_rows)
    need = full - _rank(eq_rows)
    best: Optional[Fraction] = None
    for chosen in combinations(range(len(ineq_rows)), need):
        rows = eq_rows + [ineq_rows[i] for i in chosen]
        if _rank(rows) != full:
            continue
        x = _particular(rows, eq_rhs + [ineq_rhs[i] for i in chosen], n)
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(r, x)) >= b for r, b in zip(ineq_rows, ineq_rhs)):
            if not strict:
                return True
            best = x[-1] if best is None else max(best, x[-1])
    return best is not None and best > 0


def random_system(rng, max_vars: int = 3, max_constraints: int = 5,
                  bound: int = 3) -> LinearSystem:
    """A small random system with integer data in ``[-bound, bound]``."""
    nvar = rng.randint(1, max_vars)
    names = [f"x{j}" for j in range(1, nvar + 1)]
    system = LinearSystem(names)
    for _ in range(rng.randint(1, max_constraints)):
        coeffs = {v: rng.randint(-bound, bound) for v in names if rng.random() < 0.8}
        relation = rng.choice((GE, GE, GT, EQ))
        system.add(coeffs, relation, rng.randint(-bound, bound))
    return system


def ic_set_direct(space) -> Tuple[Tuple[int, ...], ...]:
    """IC set by solving the payment system for every outcome vector."""
    space = as_space(space)
    return tuple(g for g in product(range(1, space.m + 1), repeat=space.r)
                 if is_ic_single(g, space) is not None)
