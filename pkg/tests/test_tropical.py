from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linear_sum_assignment

from tropmech.errors import DimensionMismatch, NonSquare, TooLarge
from tropmech.tropical import covector_at, optimal_bijections, permutation_sums, tropical_det

T1_EXAMPLE = [[0, 2, 3], [0, 4, 2], [0, 3, 7]]


def test_determinant_values():
    assert tropical_det([[46, 11], [47, 24]]) == 70
    assert tropical_det([[0, 0], [0, 0]]) == 0
    assert tropical_det(T1_EXAMPLE) == 11


def test_optimal_bijections():
    assert optimal_bijections([[46, 11], [47, 24]]) == ((1, 2),)
    assert optimal_bijections([[0, 0], [0, 0]]) == ((1, 2), (2, 1))
    assert optimal_bijections([[3, 4], [0, 0]]) == ((2, 1),)


def test_permutation_sums_are_lexicographic():
    sigmas = [s for s, _ in permutation_sums(T1_EXAMPLE)]
    assert sigmas == sorted(sigmas) == list(permutations((1, 2, 3)))


def test_shape_errors():
    with pytest.raises(NonSquare):
        tropical_det([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(TooLarge):
        tropical_det([[0] * 4] * 4, cap=3)


def test_covectors():
    assert covector_at((0, 2, 3), [[0, 2, 3]]) == [frozenset({1, 2, 3})]
    assert covector_at((0, 0, 0), [[0, 2, 3]]) == [frozenset({3})]
    assert covector_at((0, 0, 0), T1_EXAMPLE) == [frozenset({3}), frozenset({2}), frozenset({3})]
    with pytest.raises(DimensionMismatch):
        covector_at((0, 0), T1_EXAMPLE)


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_determinant_matches_assignment_solver(M):
    rows, cols = linear_sum_assignment(np.array(M), maximize=True)
    assert tropical_det(M) == int(np.array(M)[rows, cols].sum())
    # the solver's optimum is one of ours
    assert tuple(int(c) + 1 for c in cols) in optimal_bijections(M)


@given(square, st.fractions(min_value=-5, max_value=5))
def test_row_shift_keeps_optimal_set(M, c):
    shifted = [[v + c for v in row] if i == 0 else row for i, row in enumerate(M)]
    assert optimal_bijections(shifted) == optimal_bijections(M)
    assert tropical_det(shifted) == tropical_det(M) + c


@given(square)
def test_every_optimum_attains_the_determinant(M):
    best = tropical_det(M)
    for sigma in optimal_bijections(M):
        assert sum(Fraction(M[i][s - 1]) for i, s in enumerate(sigma)) == best
