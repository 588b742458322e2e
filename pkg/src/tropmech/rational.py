"""Exact rational scalars and matrices.

Scalars are :class:`fractions.Fraction`; matrices are tuples of row tuples.
Floats are rejected so that nothing inexact leaks into the core math.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

from .errors import DimensionMismatch

Rat = Fraction
RatMatrix = Tuple[Tuple[Fraction, ...], ...]
RatLike = Union[int, str, Fraction]


def to_rat(value: RatLike) -> Fraction:
    """Parse an integer, a ``Fraction``, or a string such as ``"4.3"`` or ``"-7/3"``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational number") from exc
    raise TypeError(f"expected int, str or Fraction, got {type(value).__name__}")


def to_vector(values: Iterable[RatLike]) -> Tuple[Fraction, ...]:
    return tuple(to_rat(v) for v in values)


def to_matrix(rows: Iterable[Iterable[RatLike]]) -> RatMatrix:
    """Convert nested rows into a rectangular, non-empty rational matrix."""
    matrix = tuple(to_vector(row) for row in rows)
    if not matrix or not matrix[0]:
        raise DimensionMismatch("a matrix needs at least one row and one column")
    width = len(matrix[0])
    for i, row in enumerate(matrix):
        if len(row) != width:
            raise DimensionMismatch(f"row {i + 1} has {len(row)} entries, expected {width}")
    return matrix


def submatrix(matrix: Sequence[Sequence[Fraction]], rows: Sequence[int],
              cols: Sequence[int]) -> RatMatrix:
    """Minor on 1-based ``rows`` and ``cols`` (kept in the given order)."""
    return tuple(tuple(matrix[i - 1][j - 1] for j in cols) for i in rows)


def format_rat(value: Fraction) -> Union[int, str]:
    """JSON-friendly form: an int when integral, otherwise ``"p/q"``."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"
