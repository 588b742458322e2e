"""Affine maximizers, the second-player perturbation, and IC-set encodings.

An outcome tensor ``g`` is an affine maximizer on ``(T^1, ..., T^n)`` iff
there are weights ``alpha_j > 0`` and a vector ``z`` with

    sum_j alpha_j T^j[i_j, g(i)] - z[g(i)] >= sum_j alpha_j T^j[i_j, k] - z[k]

for every cell ``i`` and outcome ``k``. The additive constant ``gamma``
appears on both sides and is dropped. Since the system is homogeneous in
``(alpha, z)``, ``alpha_j > 0`` is imposed as ``alpha_j >= 1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotIC, ShapeMismatch
from .feasibility import EQ, GE, GT, Infeasible, LinearSystem, Witness, check_point, solve
from .mechanism import (OutcomeFunction, SpaceLike, TypeSpace, _check_multi, as_space,
                        is_ic_single, minors)
from .rational import RatLike, submatrix, to_rat
from .tropical import MINOR_CAP, permutation_sums


def var(prefix: str, *index: int) -> str:
    """Variable name such as ``U1[2,3]`` or ``z[4]`` (1-based indices)."""
    return f"{prefix}[{','.join(str(i) for i in index)}]"


@dataclass(frozen=True)
class AMWitness:
    alphas: Tuple[Fraction, ...]
    z: Tuple[Fraction, ...]


def _cells(g: OutcomeFunction):
    for index in product(*(range(s) for s in g.shape)):
        yield index, g[index]


def am_system(g: OutcomeFunction, spaces: Sequence[SpaceLike],
              alphas: Optional[Sequence[RatLike]] = None, z: str = "z") -> LinearSystem:
    """Affine-maximizer inequalities for fixed type matrices.

    With ``alphas=None`` the weights are variables ``alpha[j] >= 1``; otherwise
    they are fixed and only ``z`` is free.
    """
    spaces = [as_space(s) for s in spaces]
    _check_multi(g, spaces)
    m = g.m
    system = LinearSystem()
    if alphas is None:
        weights = [var("alpha", j) for j in range(1, g.n + 1)]
        for w in weights:
            system.add_variable(w)
    else:
        weights = [to_rat(a) for a in alphas]
        if len(weights) != g.n:
            raise ShapeMismatch(f"{len(weights)} weights for {g.n} players")
    for k in range(1, m + 1):
        system.add_variable(var(z, k))
    for index, best in _cells(g):
        for k in range(1, m + 1):
            if k == best:
                continue
            coeffs: Dict[str, Fraction] = defaultdict(Fraction)
            rhs = Fraction(0)
            for w, space, i in zip(weights, spaces, index):
                gap = space.matrix[i][best - 1] - space.matrix[i][k - 1]
                if isinstance(w, str):
                    coeffs[w] += gap
                else:
                    rhs -= w * gap
            coeffs[var(z, best)] -= 1
            coeffs[var(z, k)] += 1
            cell = ",".join(str(i + 1) for i in index)
            system.add(coeffs, GE, rhs, label=f"am:({cell}),{k}")
    if alphas is None:
        for w in weights:
            system.add({w: 1}, GE, 1, label=f"pos:{w}")
    return system


def am_check(g: OutcomeFunction, spaces: Sequence[SpaceLike]) -> Optional[AMWitness]:
    """Weights (smallest equal to one) and ``z`` exhibiting ``g`` as an affine maximizer."""
    system = am_system(g, spaces)
    result = solve(system)
    if not result.feasible:
        return None
    point = result.point
    alphas = [point[var("alpha", j)] for j in range(1, g.n + 1)]
    scale = min(alphas)
    return AMWitness(tuple(a / scale for a in alphas),
                     tuple(point[var("z", k)] / scale for k in range(1, g.m + 1)))


def am_refutation(g: OutcomeFunction, spaces: Sequence[SpaceLike]):
    """``(system, result)`` for the variable-weight encoding, for reporting certificates."""
    system = am_system(g, spaces)
    return system, solve(system)


def check_am_witness(g: OutcomeFunction, spaces: Sequence[SpaceLike], witness: AMWitness) -> bool:
    if any(a <= 0 for a in witness.alphas):
        return False
    system = am_system(g, spaces, alphas=witness.alphas)
    return check_point(system, {var("z", k): v for k, v in enumerate(witness.z, start=1)})


def perturb_second_player(g: OutcomeFunction, first: SpaceLike) -> TypeSpace:
    """Second-player types making ``g`` an affine maximizer with unit weights and ``z = 0``.

    Row ``j`` is minus the payment vector that makes column ``j`` of ``g``
    truthful on ``first``.
    """
    first = as_space(first)
    if g.n != 2 or g.shape[0] != first.r or g.m != first.m:
        raise ShapeMismatch(f"need an {first.r}x? outcome matrix with m={first.m}, "
                            f"got shape {g.shape} with m={g.m}")
    rows = []
    for (_, j, ), column in g.fibers(0):
        x = is_ic_single(column, first)
        if x is None:
            raise NotIC(f"column {j + 1} of g, {column}, is not IC on the first type space")
        rows.append(tuple(-v for v in x))
    return TypeSpace(tuple(rows), label="perturbed")


# ---------------------------------------------------------------------------
# symbolic encodings

def add_matrix_variables(system: LinearSystem, prefix: str, r: int, m: int) -> None:
    for i in range(1, r + 1):
        for k in range(1, m + 1):
            system.add_variable(var(prefix, i, k))


def _perm_form(prefix: str, rows: Sequence[int], cols: Sequence[int], sigma) -> Dict[str, int]:
    return {var(prefix, i, cols[s - 1]): 1 for i, s in zip(rows, sigma)}


def _difference(plus: Dict[str, int], minus: Dict[str, int]) -> Dict[str, int]:
    out: Dict[str, int] = defaultdict(int)
    for k, v in plus.items():
        out[k] += v
    for k, v in minus.items():
        out[k] -= v
    return out


def encode_ic_equality(space: SpaceLike, prefix: str, system: Optional[LinearSystem] = None,
                       *, cap: int = MINOR_CAP) -> LinearSystem:
    """Constraints on a symbolic matrix ``prefix[i,k]`` forcing its multifield to equal that of ``space``.

    For each minor, the lexicographically first optimal permutation of
    ``space`` is tied by equality to the other optimal ones and beats every
    non-optimal permutation strictly. Equal multifields mean equal IC sets.
    Labels read ``mf:<prefix>:<rows>|<cols>:<other permutation>``.
    """
    space = as_space(space)
    system = LinearSystem() if system is None else system
    add_matrix_variables(system, prefix, space.r, space.m)
    for I, J in minors(space.r, space.m, cap=cap):
        if len(I) == 1:
            continue
        sums = list(permutation_sums(submatrix(space.matrix, I, J), cap=cap))
        best = max(total for _, total in sums)
        lead = next(sigma for sigma, total in sums if total == best)
        lead_form = _perm_form(prefix, I, J, lead)
        tag = f"{''.join(map(str, I))}|{''.join(map(str, J))}"
        for sigma, total in sums:
            if sigma == lead:
                continue
            form = _difference(lead_form, _perm_form(prefix, I, J, sigma))
            relation = EQ if total == best else GT
            system.add(form, relation, 0,
                       label=f"mf:{prefix}:{tag}:{''.join(map(str, sigma))}")
    return system


def add_symbolic_am(system: LinearSystem, g: OutcomeFunction, prefixes: Sequence[str],
                    weights: Sequence[RatLike], z: str, shapes: Sequence[Tuple[int, int]],
                    tag: str = "") -> None:
    """Affine-maximizer inequalities with unknown type matrices ``prefixes[j]``."""
    if len(prefixes) != g.n:
        raise ShapeMismatch(f"{len(prefixes)} matrices for {g.n} players")
    weights = [to_rat(w) for w in weights]
    for prefix, (r, m) in zip(prefixes, shapes):
        add_matrix_variables(system, prefix, r, m)
    for k in range(1, g.m + 1):
        system.add_variable(var(z, k))
    for index, best in _cells(g):
        for k in range(1, g.m + 1):
            if k == best:
                continue
            coeffs: Dict[str, Fraction] = defaultdict(Fraction)
            for w, prefix, i in zip(weights, prefixes, index):
                coeffs[var(prefix, i + 1, best)] += w
                coeffs[var(prefix, i + 1, k)] -= w
            coeffs[var(z, best)] -= 1
            coeffs[var(z, k)] += 1
            cell = ",".join(str(i + 1) for i in index)
            system.add(coeffs, GE, 0, label=f"am{tag}:({cell}),{k}")


def add_strict_covector(system: LinearSystem, covector: Sequence[int], prefix: str,
                        point: str, m: int) -> None:
    """``prefix[i,h_i] - point[h_i] > prefix[i,k] - point[k]`` for all ``k != h_i``."""
    for k in range(1, m + 1):
        system.add_variable(var(point, k))
    for i, h in enumerate(covector, start=1):
        for k in range(1, m + 1):
            if k != h:
                system.add({var(prefix, i, h): 1, var(point, h): -1,
                            var(prefix, i, k): -1, var(point, k): 1}, GT, 0,
                           label=f"cov:{i},{k}")
