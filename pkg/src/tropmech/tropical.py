"""Max-plus determinants, their optimal permutations, and min-plus covectors.

Index conventions: matrices are 0-indexed Python tuples, but everything a
user sees is 1-based. A bijection of size ``l`` is a tuple ``(s_1, ..., s_l)``
meaning row ``z`` of the (sub)matrix is matched with column ``s_z``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from .errors import DimensionMismatch, NonSquare, TooLarge
from .rational import RatLike, to_matrix, to_vector

Bijection = Tuple[int, ...]

MINOR_CAP = 9


def _square(matrix, cap: int):
    M = to_matrix(matrix)
    size = len(M)
    if any(len(row) != size for row in M):
        raise NonSquare(f"expected a square matrix, got {size}x{len(M[0])}")
    if size > cap:
        raise TooLarge(f"{size}x{size} minor exceeds the enumeration cap of {cap}")
    return M


def permutation_sums(matrix, *, cap: int = MINOR_CAP) -> Iterator[Tuple[Bijection, Fraction]]:
    """Yield every bijection with its diagonal sum, in lexicographic order."""
    M = _square(matrix, cap)
    size = len(M)
    for sigma in permutations(range(size)):
        total = sum((M[z][sigma[z]] for z in range(size)), Fraction(0))
        yield tuple(s + 1 for s in sigma), total


def tropical_det(matrix, *, cap: int = MINOR_CAP) -> Fraction:
    """Max-plus determinant: the largest diagonal sum over all bijections."""
    return max(total for _, total in permutation_sums(matrix, cap=cap))


def optimal_bijections(matrix, *, cap: int = MINOR_CAP) -> Tuple[Bijection, ...]:
    """All bijections attaining :func:`tropical_det`, lexicographically sorted."""
    sums = list(permutation_sums(matrix, cap=cap))
    best = max(total for _, total in sums)
    return tuple(sigma for sigma, total in sums if total == best)


def covector_at(z: Sequence[RatLike], types) -> List[FrozenSet[int]]:
    """For each row ``t`` of ``types``, the 1-based indices minimising ``z_j - t_j``."""
    point = to_vector(z)
    T = to_matrix(types)
    if len(point) != len(T[0]):
        raise DimensionMismatch(f"point has {len(point)} coordinates, types have {len(T[0])}")
    rows = []
    for t in T:
        gaps = [zj - tj for zj, tj in zip(point, t)]
        low = min(gaps)
        rows.append(frozenset(j + 1 for j, gap in enumerate(gaps) if gap == low))
    return rows
