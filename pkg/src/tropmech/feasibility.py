"""Exact feasibility of mixed linear systems over the rationals.

A :class:`LinearSystem` holds constraints ``a.x >= b``, ``a.x > b`` and
``a.x = b`` over free variables. :func:`solve` either returns a
:class:`Witness` satisfying every constraint (strict ones strictly) or an
:class:`Infeasible` verdict carrying multipliers that combine the
constraints into ``0 >= c`` with ``c > 0`` or into ``0 > 0``.

Strict constraints are handled with a single gap variable ``t``: each
``a.x > b`` becomes ``a.x - t >= b``, ``t <= 1`` is added, and ``t`` is
maximised. The system is strictly feasible iff the optimum is positive.
Certificates are read off the optimal dual of that LP (or of phase one when
the weak part is already infeasible), so they are exact Motzkin multipliers.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import IndexOutOfRange, UnassignedVariable, UnknownVariable
from .rational import RatLike, to_matrix, to_rat

GE, GT, EQ = ">=", ">", "="
RELATIONS = (GE, GT, EQ)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[str, Fraction]
    relation: str
    rhs: Fraction
    label: str = ""

    def lhs(self, point: Mapping[str, Fraction]) -> Fraction:
        total = _ZERO
        for name, coef in self.coeffs.items():
            try:
                total += coef * point[name]
            except KeyError:
                raise UnassignedVariable(name) from None
        return total

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        value = self.lhs(point)
        if self.relation == GE:
            return value >= self.rhs
        if self.relation == GT:
            return value > self.rhs
        return value == self.rhs

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*{v}" for v, c in self.coeffs.items()) or "0"
        tag = f"  [{self.label}]" if self.label else ""
        return f"{terms} {self.relation} {self.rhs}{tag}"


@dataclass
class LinearSystem:
    """Ordered variables plus an ordered constraint list."""

    variables: List[str] = field(default_factory=list)
    constraints: List[Constraint] = field(default_factory=list)

    def __post_init__(self):
        self._declared = set()
        names = list(self.variables)
        self.variables = []
        for name in names:
            self.add_variable(name)
        pending, self.constraints = list(self.constraints), []
        for c in pending:
            self.add(c.coeffs, c.relation, c.rhs, c.label)

    def add_variable(self, name: str) -> str:
        if name not in self._declared:
            self._declared.add(name)
            self.variables.append(name)
        return name

    def add(self, coeffs: Mapping[str, RatLike], relation: str, rhs: RatLike = 0,
            label: str = "") -> int:
        """Append a constraint and return its index. Zero coefficients are dropped."""
        if relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {relation!r}")
        clean = {}
        for name, value in coeffs.items():
            if name not in self._declared:
                raise UnknownVariable(name)
            value = to_rat(value)
            if value:
                clean[name] = value
        self.constraints.append(Constraint(clean, relation, to_rat(rhs), label))
        return len(self.constraints) - 1

    def copy(self) -> "LinearSystem":
        return LinearSystem(list(self.variables), list(self.constraints))

    def find(self, label: str) -> int:
        """Index of the unique constraint carrying ``label``."""
        hits = [i for i, c in enumerate(self.constraints) if c.label == label]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} constraints labelled {label!r}")
        return hits[0]

    def __len__(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True)
class InfeasCert:
    """Multipliers keyed by constraint index; absent indices count as zero."""

    multipliers: Mapping[int, Fraction]


@dataclass(frozen=True)
class Witness:
    point: Mapping[str, Fraction]
    feasible = True


@dataclass(frozen=True)
class Infeasible:
    certificate: InfeasCert
    feasible = False


FeasibilityResult = Union[Witness, Infeasible]


def check_point(system: LinearSystem, point: Mapping[str, RatLike]) -> bool:
    missing = [v for v in system.variables if v not in point]
    if missing:
        raise UnassignedVariable(missing[0])
    exact = {v: to_rat(point[v]) for v in system.variables}
    return all(c.holds(exact) for c in system.constraints)


def combine(system: LinearSystem, multipliers: Mapping[int, RatLike]
            ) -> Tuple[Dict[str, Fraction], Fraction]:
    """Weighted sum of constraint left-hand sides and right-hand sides."""
    lhs: Dict[str, Fraction] = defaultdict(Fraction)
    rhs = _ZERO
    for index, weight in multipliers.items():
        if not 0 <= index < len(system.constraints):
            raise IndexOutOfRange(f"constraint index {index} out of range")
        weight = to_rat(weight)
        c = system.constraints[index]
        for name, coef in c.coeffs.items():
            lhs[name] += weight * coef
        rhs += weight * c.rhs
    return {k: v for k, v in lhs.items() if v}, rhs


def check_certificate(system: LinearSystem, cert: InfeasCert) -> bool:
    """True iff ``cert`` proves ``system`` has no solution."""
    weights = {i: to_rat(w) for i, w in cert.multipliers.items()}
    lhs, rhs = combine(system, weights)
    strict_used = False
    for index, weight in weights.items():
        relation = system.constraints[index].relation
        if relation != EQ and weight < 0:
            return False
        if relation == GT and weight > 0:
            strict_used = True
    if lhs:
        return False
    return rhs > 0 or (rhs == 0 and strict_used)


# ---------------------------------------------------------------------------
# exact simplex

def _lcm_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        d = v.denominator
        out = out * d // gcd(out, d)
    return out


def _reduce(row: List[int]) -> List[int]:
    g = gcd(*row)
    return row if g <= 1 else [v // g for v in row]


class _Tableau:
    """Integer tableau in canonical form.

    Each row is stored up to a positive factor, with the entry in its basic
    column positive, so ratios and signs can be read without division. The
    objective row carries an explicit positive denominator because dual
    values are read from it.
    """

    def __init__(self, rows: List[List[int]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.width = len(rows[0]) - 1
        self.obj: List[int] = []
        self.obj_den = 1

    def set_cost(self, cost: Sequence[int]) -> None:
        """Reduced costs ``c_j - c_B B^-1 A_j``; last entry is ``-c_B B^-1 b``."""
        obj = [Fraction(c) for c in cost] + [_ZERO]
        for k, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[k]
                scale = Fraction(cb, row[b])
                for j, v in enumerate(row):
                    if v:
                        obj[j] -= scale * v
        den = _lcm_denominator(obj)
        self.obj = [int(v * den) for v in obj]
        self.obj_den = den

    def reduced(self, j: int) -> Fraction:
        return Fraction(self.obj[j], self.obj_den)

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        if prow[c] < 0:
            prow = [-v for v in prow]
        self.rows[r] = prow = _reduce(prow)
        p = prow[c]
        for k, row in enumerate(self.rows):
            if k != r:
                f = row[c]
                if f:
                    self.rows[k] = _reduce([p * a - f * b for a, b in zip(row, prow)])
        f = self.obj[c]
        if f:
            obj = [p * a - f * b for a, b in zip(self.obj, prow)]
            den = p * self.obj_den
            g = gcd(den, *obj)
            self.obj = [v // g for v in obj]
            self.obj_den = den // g
        self.basis[r] = c

    def maximise(self, allowed: Sequence[bool]) -> None:
        """Bland's rule: lowest-index improving column, lowest-index leaving basic."""
        while True:
            obj = self.obj
            enter = next((j for j in range(self.width) if allowed[j] and obj[j] > 0), None)
            if enter is None:
                return
            best = None
            for k, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = Fraction(row[-1], a)
                    key = (ratio, self.basis[k])
                    if best is None or key < best[0]:
                        best = (key, k)
            if best is None:
                raise RuntimeError("unbounded LP; the gap bound should prevent this")
            self.pivot(best[1], enter)

    def values(self) -> List[Fraction]:
        out = [_ZERO] * self.width
        for k, b in enumerate(self.basis):
            row = self.rows[k]
            out[b] = Fraction(row[-1], row[b])
        return out


def solve(system: LinearSystem) -> FeasibilityResult:
    """Decide feasibility exactly; see the module docstring for the method."""
    variables = system.variables
    constraints = system.constraints
    if not constraints:
        return Witness({v: _ZERO for v in variables})

    nvar = len(variables)
    col = {v: j for j, v in enumerate(variables)}
    strict = any(c.relation == GT for c in constraints)
    inequalities = [i for i, c in enumerate(constraints) if c.relation != EQ]

    # columns: x+ (nvar), x- (nvar), [t+, t-], surplus per inequality, [cap slack], artificials
    t_pos = 2 * nvar
    surplus_base = t_pos + (2 if strict else 0)
    surplus_of = {i: surplus_base + n for n, i in enumerate(inequalities)}
    cap_slack = surplus_base + len(inequalities)
    structural = cap_slack + (1 if strict else 0)
    nrows = len(constraints) + (1 if strict else 0)
    art_base = structural
    width = structural + nrows

    rows: List[List[int]] = []
    scales: List[int] = []  # standard-form row k = scales[k] * original row k
    for i, c in enumerate(constraints):
        scale = _lcm_denominator(list(c.coeffs.values()) + [c.rhs])
        if c.rhs < 0:
            scale = -scale
        row = [0] * (width + 1)
        for name, coef in c.coeffs.items():
            j = col[name]
            row[j] = int(coef * scale)
            row[nvar + j] = -row[j]
        if c.relation == GT:
            row[t_pos] = -scale
            row[t_pos + 1] = scale
        if c.relation != EQ:
            row[surplus_of[i]] = -scale
        row[-1] = int(c.rhs * scale)
        row[art_base + i] = 1
        rows.append(row)
        scales.append(scale)
    if strict:
        row = [0] * (width + 1)
        row[t_pos] = 1
        row[t_pos + 1] = -1
        row[cap_slack] = 1
        row[-1] = 1
        row[art_base + len(constraints)] = 1
        rows.append(row)

    tab = _Tableau(rows, [art_base + k for k in range(nrows)])

    def multipliers(art_cost: int) -> InfeasCert:
        # dual y_k = c_art - reduced cost of artificial k; constraint multiplier u = -scale * y
        mult = {}
        for i in range(len(constraints)):
            y = art_cost - tab.reduced(art_base + i)
            u = -scales[i] * y
            if u:
                mult[i] = u
        return InfeasCert(mult)

    tab.set_cost([0] * structural + [-1] * nrows)
    tab.maximise([True] * width)
    if tab.obj[-1] != 0:  # -(optimal value) > 0 means some artificial stays positive
        return Infeasible(multipliers(-1))

    for k in range(nrows):
        if tab.basis[k] >= art_base:
            row = tab.rows[k]
            j = next((j for j in range(structural) if row[j]), None)
            if j is not None:
                tab.pivot(k, j)

    if strict:
        cost = [0] * width
        cost[t_pos] = 1
        cost[t_pos + 1] = -1
        tab.set_cost(cost)
        tab.maximise([True] * structural + [False] * nrows)
        if -tab.obj[-1] <= 0:
            return Infeasible(multipliers(0))

    vals = tab.values()
    return Witness({v: vals[j] - vals[nvar + j] for j, v in enumerate(variables)})


# ---------------------------------------------------------------------------
# difference constraints

def solve_difference(g: Sequence[int], types) -> Optional[Tuple[Fraction, ...]]:
    """Payments ``x`` with ``T[i,g(i)] - x[g(i)] >= T[i,k] - x[k]`` for all ``i, k``.

    Longest paths on the graph with an edge ``g(i) -> k`` of weight
    ``T[i,k] - T[i,g(i)]``, rooted at the smallest outcome ``g`` uses. Every
    entry of the result is the least value compatible with that anchor being
    zero. Returns ``None`` when a positive cycle makes the system infeasible.
    Outcomes outside the range of ``g`` only receive lower bounds, so they are
    left out of the cycle search and filled in afterwards.
    """
    T = to_matrix(types)
    m = len(T[0])
    if len(g) != len(T):
        raise ValueError(f"outcome vector has {len(g)} entries, type space has {len(T)} rows")
    used = sorted(set(g))
    if used[0] < 1 or used[-1] > m:
        raise ValueError(f"outcomes must lie in 1..{m}")
    in_range = set(used)
    inner = []  # (u, v, w) between range nodes, 0-based
    outer = []
    for row, gi in zip(T, g):
        u = gi - 1
        for k in range(m):
            if k != u:
                edge = (u, k, row[k] - row[u])
                (inner if k + 1 in in_range else outer).append(edge)

    dist: List[Optional[Fraction]] = [None] * m
    dist[used[0] - 1] = _ZERO
    for _ in range(len(used)):
        changed = False
        for u, v, w in inner:
            du = dist[u]
            if du is not None and (dist[v] is None or du + w > dist[v]):
                dist[v] = du + w
                changed = True
        if not changed:
            break
    else:
        return None  # still relaxing after |range| rounds: positive cycle
    for u, v, w in outer:
        cand = dist[u] + w
        if dist[v] is None or cand > dist[v]:
            dist[v] = cand
    return tuple(dist)


def difference_system(g: Sequence[int], types, prefix: str = "x") -> LinearSystem:
    """The same payment inequalities as a :class:`LinearSystem` (for cross-checks)."""
    T = to_matrix(types)
    m = len(T[0])
    system = LinearSystem([f"{prefix}[{k}]" for k in range(1, m + 1)])
    for i, (row, gi) in enumerate(zip(T, g), start=1):
        for k in range(1, m + 1):
            if k != gi:
                system.add({f"{prefix}[{k}]": 1, f"{prefix}[{gi}]": -1}, GE,
                           row[k - 1] - row[gi - 1], label=f"ic:{i},{k}")
    return system
