"""Tests for exact linear algebra."""

from fractions import Fraction

import pytest

from src.core.linalg import (
    SingularMatrixError,
    SpanSolver,
    determinant,
    in_span,
    independent_subset,
    inverse,
    kernel_basis,
    mat_mul,
    mat_vec,
    rank,
    row_reduce,
    solve,
)
from src.core.scalars import SQRT2, SQRT3, FieldElement

F = Fraction


def test_row_reduce_pivots():
    reduced, pivots = row_reduce([[0, 2, 4], [1, 1, 1]])
    assert pivots == [0, 1]
    assert reduced == [[1, 0, -1], [0, 1, 2]]


def test_rank_and_kernel():
    matrix = [[1, 2, 3], [2, 4, 6]]
    assert rank(matrix) == 1
    basis = kernel_basis(matrix)
    assert len(basis) == 2
    for vector in basis:
        assert mat_vec(matrix, vector) == [0, 0]


def test_kernel_of_empty_matrix_is_everything():
    assert kernel_basis([], 2) == [[1, 0], [0, 1]]


def test_solve_particular_and_inconsistent():
    assert solve([[1, 1], [0, 1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_integer_determinant_stays_exact():
    value = determinant([[2, 1], [1, 1]])
    assert value == 1
    assert isinstance(value, Fraction)
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0


def test_determinant_over_the_field():
    assert determinant([[SQRT2, 1], [1, SQRT2]]) == 1
    assert determinant([[SQRT3, SQRT2], [SQRT2, SQRT3]]) == 1


def test_inverse():
    matrix = [[F(2), F(1)], [F(1), F(1)]]
    assert mat_mul(matrix, inverse(matrix)) == [[1, 0], [0, 1]]
    with pytest.raises(SingularMatrixError):
        inverse([[F(1), F(2)], [F(2), F(4)]])


def test_independent_subset_is_greedy():
    vectors = [[1, 0], [2, 0], [0, 1], [1, 1]]
    assert independent_subset(vectors) == [0, 2]


def test_span_solver():
    solver = SpanSolver([[1, 1, 0], [0, 1, 1]], 3)
    assert solver.coordinates([2, 3, 1]) == [2, 1]
    assert not solver.contains([1, 0, 0])
    with pytest.raises(SingularMatrixError):
        SpanSolver([[1, 0], [2, 0]], 2)


def test_in_span_with_field_entries():
    vectors = [[SQRT2, FieldElement(1)]]
    assert in_span(vectors, [FieldElement(2), SQRT2])
    assert not in_span(vectors, [FieldElement(1), FieldElement(1)])
    assert in_span([], [0, 0])
