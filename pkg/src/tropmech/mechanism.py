"""Type spaces, outcome functions and incentive compatibility.

Two independent single-player tests are provided: :func:`is_ic_single`
solves the payment inequalities as difference constraints, and
:func:`is_ic_single_minor` checks that every allocation-compatible diagonal
of the type matrix attains the max-plus determinant of its minor. Matching
multifields (optimal permutation sets of every square minor) decide whether
two type matrices have the same IC set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, InvalidOutcome, NonpositiveAlpha, ShapeMismatch, TooLarge
from .feasibility import solve_difference
from .rational import RatLike, RatMatrix, submatrix, to_matrix, to_rat, to_vector
from .tropical import MINOR_CAP, Bijection, optimal_bijections

ENUM_CAP = 10**6

Minor = Tuple[Tuple[int, ...], Tuple[int, ...]]
MatchingMultifield = Dict[Minor, Tuple[Bijection, ...]]
ICSet = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class TypeSpace:
    """Rows are the types, columns the outcomes."""

    matrix: RatMatrix
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", to_matrix(self.matrix))

    @property
    def r(self) -> int:
        return len(self.matrix)

    @property
    def m(self) -> int:
        return len(self.matrix[0])

    @property
    def rows(self) -> RatMatrix:
        return self.matrix

    def scaled(self, alpha: RatLike) -> "TypeSpace":
        a = to_rat(alpha)
        return TypeSpace(tuple(tuple(a * v for v in row) for row in self.matrix), self.label)

    def shifted(self, vector: Sequence[RatLike]) -> "TypeSpace":
        c = to_vector(vector)
        return TypeSpace(tuple(tuple(v + s for v, s in zip(row, c)) for row in self.matrix),
                         self.label)


SpaceLike = Union[TypeSpace, Sequence[Sequence[RatLike]]]


def as_space(space: SpaceLike) -> TypeSpace:
    return space if isinstance(space, TypeSpace) else TypeSpace(space)


@dataclass(frozen=True)
class OutcomeFunction:
    """Row-major tensor of 1-based outcomes over the players' type indices."""

    shape: Tuple[int, ...]
    values: Tuple[int, ...]
    m: int

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "values", values)
        if not shape or any(s < 1 for s in shape):
            raise ShapeMismatch(f"invalid shape {shape}")
        if prod(shape) != len(values):
            raise ShapeMismatch(f"shape {shape} needs {prod(shape)} values, got {len(values)}")
        bad = [v for v in values if not 1 <= v <= self.m]
        if bad:
            raise InvalidOutcome(f"outcome {bad[0]} outside 1..{self.m}")

    @classmethod
    def vector(cls, values: Sequence[int], m: int) -> "OutcomeFunction":
        return cls((len(values),), tuple(values), m)

    @classmethod
    def nested(cls, data, m: int) -> "OutcomeFunction":
        """Build from nested lists, e.g. a matrix ``[[2, 1], [3, 3]]``."""
        shape = []
        probe = data
        while isinstance(probe, (list, tuple)):
            shape.append(len(probe))
            probe = probe[0]
        flat: List[int] = []

        def walk(node, depth):
            if depth == len(shape):
                flat.append(node)
                return
            if not isinstance(node, (list, tuple)) or len(node) != shape[depth]:
                raise ShapeMismatch("ragged outcome tensor")
            for child in node:
                walk(child, depth + 1)

        walk(data, 0)
        return cls(tuple(shape), tuple(flat), m)

    @property
    def n(self) -> int:
        return len(self.shape)

    def _offset(self, index: Sequence[int]) -> int:
        off = 0
        for i, s in zip(index, self.shape):
            off = off * s + i
        return off

    def __getitem__(self, index) -> int:
        """0-based type indices; ``g[i, j]`` for matrices, ``g[i]`` for vectors."""
        if not isinstance(index, tuple):
            index = (index,)
        if len(index) != self.n or any(not 0 <= i < s for i, s in zip(index, self.shape)):
            raise IndexError(index)
        return self.values[self._offset(index)]

    def fibers(self, axis: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Yield ``(fixed_index, vector)`` for every fiber along ``axis``.

        ``fixed_index`` carries ``-1`` in the position of ``axis``.
        """
        others = [range(s) if a != axis else (-1,) for a, s in enumerate(self.shape)]
        for fixed in product(*others):
            idx = list(fixed)
            vec = []
            for l in range(self.shape[axis]):
                idx[axis] = l
                vec.append(self.values[self._offset(idx)])
            yield fixed, tuple(vec)

    def to_nested(self):
        def build(depth, off):
            if depth == self.n:
                return self.values[off]
            return [build(depth + 1, off * self.shape[depth] + i) for i in range(self.shape[depth])]
        return build(0, 0)


def _vector(g, space: TypeSpace) -> Tuple[int, ...]:
    if isinstance(g, OutcomeFunction):
        if g.n != 1:
            raise ShapeMismatch(f"expected a single-player outcome vector, got shape {g.shape}")
        values = g.values
    else:
        values = tuple(int(v) for v in g)
    if len(values) != space.r:
        raise ShapeMismatch(f"outcome vector has {len(values)} entries, type space has {space.r}")
    bad = [v for v in values if not 1 <= v <= space.m]
    if bad:
        raise InvalidOutcome(f"outcome {bad[0]} outside 1..{space.m}")
    return values


def minkowski_combine(spaces: Sequence[SpaceLike], alphas: Optional[Sequence[RatLike]] = None,
                      gamma: Optional[Sequence[RatLike]] = None) -> TypeSpace:
    """Rows ``sum_j alpha_j * T^j[i_j] + gamma`` over multi-indices in lexicographic order."""
    spaces = [as_space(s) for s in spaces]
    m = spaces[0].m
    if any(s.m != m for s in spaces):
        raise DimensionMismatch("all type spaces must have the same number of outcomes")
    alphas = [Fraction(1)] * len(spaces) if alphas is None else [to_rat(a) for a in alphas]
    if len(alphas) != len(spaces):
        raise DimensionMismatch(f"{len(alphas)} weights for {len(spaces)} type spaces")
    if any(a <= 0 for a in alphas):
        raise NonpositiveAlpha("weights must be positive")
    gamma = (Fraction(0),) * m if gamma is None else to_vector(gamma)
    if len(gamma) != m:
        raise DimensionMismatch(f"gamma has {len(gamma)} entries, expected {m}")
    rows = []
    for combo in product(*(s.matrix for s in spaces)):
        rows.append(tuple(gamma[k] + sum((a * t[k] for a, t in zip(alphas, combo)), Fraction(0))
                          for k in range(m)))
    return TypeSpace(tuple(rows))


def is_ic_single(g, space: SpaceLike) -> Optional[Tuple[Fraction, ...]]:
    """A payment vector making ``g`` truthful on ``space``, or ``None``."""
    space = as_space(space)
    return solve_difference(_vector(g, space), space.matrix)


def _families(values: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Row sets (1-based, size >= 2) whose outcomes are pairwise distinct."""
    by_outcome: Dict[int, List[int]] = {}
    for i, v in enumerate(values, start=1):
        by_outcome.setdefault(v, []).append(i)
    groups = list(by_outcome.values())
    for choice in product(*([0] + rows for rows in groups)):
        rows = sorted(i for i in choice if i)
        if len(rows) >= 2:
            yield tuple(rows)


def _diagonal(values: Sequence[int], rows: Tuple[int, ...]) -> Tuple[Tuple[int, ...], Bijection]:
    cols = tuple(sorted(values[i - 1] for i in rows))
    position = {c: p for p, c in enumerate(cols, start=1)}
    return cols, tuple(position[values[i - 1]] for i in rows)


def is_ic_single_minor(g, space: SpaceLike, *, cap: int = MINOR_CAP) -> bool:
    """IC test through max-plus determinants of the minors ``g`` selects."""
    space = as_space(space)
    values = _vector(g, space)
    for rows in _families(values):
        cols, diagonal = _diagonal(values, rows)
        if diagonal not in optimal_bijections(submatrix(space.matrix, rows, cols), cap=cap):
            return False
    return True


def minors(r: int, m: int, *, cap: int = MINOR_CAP) -> Iterator[Minor]:
    """All square minors, by size, then row set, then column set."""
    if min(r, m) > cap:
        raise TooLarge(f"minors up to size {min(r, m)} exceed the cap of {cap}")
    for size in range(1, min(r, m) + 1):
        for rows in combinations(range(1, r + 1), size):
            for cols in combinations(range(1, m + 1), size):
                yield rows, cols


def multifield(space: SpaceLike, *, cap: int = MINOR_CAP) -> MatchingMultifield:
    space = as_space(space)
    return {(I, J): optimal_bijections(submatrix(space.matrix, I, J), cap=cap)
            for I, J in minors(space.r, space.m, cap=cap)}


def _ic_from_multifield(values: Sequence[int], field: MatchingMultifield) -> bool:
    for rows in _families(values):
        cols, diagonal = _diagonal(values, rows)
        if diagonal not in field[(rows, cols)]:
            return False
    return True


def ic_set(space: SpaceLike, *, cap: int = ENUM_CAP, minor_cap: int = MINOR_CAP) -> ICSet:
    """Every IC outcome vector on ``space``, lexicographically sorted."""
    space = as_space(space)
    if space.m ** space.r > cap:
        raise TooLarge(f"{space.m}^{space.r} outcome vectors exceed the cap of {cap}")
    field = multifield(space, cap=minor_cap)
    outcomes = range(1, space.m + 1)
    return tuple(g for g in product(outcomes, repeat=space.r) if _ic_from_multifield(g, field))


@dataclass(frozen=True)
class ICEquality:
    """Truthy iff the IC sets agree; ``minor`` names the first differing minor otherwise."""

    equal: bool
    minor: Optional[Minor] = None
    left: Tuple[Bijection, ...] = ()
    right: Tuple[Bijection, ...] = ()

    def __bool__(self) -> bool:
        return self.equal


def ic_equal(first: SpaceLike, second: SpaceLike, *, cap: int = MINOR_CAP) -> ICEquality:
    a, b = as_space(first), as_space(second)
    if (a.r, a.m) != (b.r, b.m):
        raise ShapeMismatch(f"type matrices are {a.r}x{a.m} and {b.r}x{b.m}")
    for I, J in minors(a.r, a.m, cap=cap):
        if len(I) == 1:
            continue
        left = optimal_bijections(submatrix(a.matrix, I, J), cap=cap)
        right = optimal_bijections(submatrix(b.matrix, I, J), cap=cap)
        if left != right:
            return ICEquality(False, (I, J), left, right)
    return ICEquality(True)


def _check_multi(g: OutcomeFunction, spaces: Sequence[TypeSpace]) -> None:
    if g.n != len(spaces):
        raise ShapeMismatch(f"outcome tensor has {g.n} axes for {len(spaces)} type spaces")
    for axis, s in enumerate(spaces):
        if s.r != g.shape[axis] or s.m != g.m:
            raise ShapeMismatch(f"axis {axis + 1}: tensor extent {g.shape[axis]} with m={g.m}, "
                                f"type space is {s.r}x{s.m}")


def ic_multi_failures(g: OutcomeFunction, spaces: Sequence[SpaceLike]
                      ) -> List[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]:
    """Fibers that are not IC, as ``(axis, fixed_index, vector)`` with 1-based axis."""
    spaces = [as_space(s) for s in spaces]
    _check_multi(g, spaces)
    bad = []
    for axis, space in enumerate(spaces):
        for fixed, vec in g.fibers(axis):
            if is_ic_single(vec, space) is None:
                bad.append((axis + 1, fixed, vec))
    return bad


def is_ic_multi(g: OutcomeFunction, spaces: Sequence[SpaceLike]) -> bool:
    """IC on the product space iff every fiber along axis ``j`` is IC on space ``j``."""
    return not ic_multi_failures(g, spaces)
