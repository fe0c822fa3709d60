"""
Exact linear algebra over a field.

Entries may be Fractions or FieldElements; nothing here rounds. Elimination is
Gauss-Jordan with exact division, determinants use Bareiss' fraction-free
recurrence. Pivot choice is always the first non-zero entry so results are
reproducible from run to run.
"""

from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from src.core.scalars import ZERO

Matrix = List[List[Any]]
Vector = List[Any]


class SingularMatrixError(ValueError):
    """Raised when an inverse or unique solution is requested of a singular matrix."""


def _zero_like(rows: Sequence[Sequence[Any]]) -> Any:
    for row in rows:
        for entry in row:
            return entry * 0
    return ZERO


def copy_matrix(matrix: Sequence[Sequence[Any]]) -> Matrix:
    """Copy, promoting plain ints to Fractions so division stays exact."""
    return [[Fraction(x) if isinstance(x, int) else x for x in row] for row in matrix]


def transpose(matrix: Sequence[Sequence[Any]], columns: Optional[int] = None) -> Matrix:
    """
    Transpose a row-major matrix.

    Args:
        matrix: Rows of equal length
        columns: Column count, needed when ``matrix`` has no rows

    Returns:
        The transposed matrix as a new list of rows
    """
    if columns is None:
        columns = len(matrix[0]) if matrix else 0
    return [[row[j] for row in matrix] for j in range(columns)]


def mat_mul(left: Sequence[Sequence[Any]], right: Sequence[Sequence[Any]]) -> Matrix:
    """
    Matrix product, skipping zero entries.

    Args:
        left: m×k matrix
        right: k×n matrix

    Returns:
        The m×n product
    """
    zero = _zero_like(left)
    inner = len(right)
    width = len(right[0]) if right else 0
    result = []
    for row in left:
        out = []
        for j in range(width):
            total = zero
            for k in range(inner):
                if row[k] and right[k][j]:
                    total = total + row[k] * right[k][j]
            out.append(total)
        result.append(out)
    return result


def mat_vec(matrix: Sequence[Sequence[Any]], vector: Sequence[Any]) -> Vector:
    """Matrix times column vector."""
    zero = _zero_like(matrix) if matrix else (vector[0] * 0 if vector else ZERO)
    result = []
    for row in matrix:
        total = zero
        for entry, value in zip(row, vector):
            if entry and value:
                total = total + entry * value
        result.append(total)
    return result


def row_reduce(matrix: Sequence[Sequence[Any]]) -> Tuple[Matrix, List[int]]:
    """
    Gauss-Jordan elimination.

    Args:
        matrix: Matrix over an exact field

    Returns:
        Reduced row echelon form and the list of pivot columns
    """
    rows = copy_matrix(matrix)
    if not rows:
        return rows, []
    width = len(rows[0])
    pivots: List[int] = []
    r = 0
    for col in range(width):
        if r == len(rows):
            break
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][col]
        scale = (pivot * 0 + 1) / pivot
        rows[r] = [entry * scale if entry else entry for entry in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows, pivots


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    """
    Rank of a matrix.

    Args:
        matrix: Matrix over an exact field

    Returns:
        Number of pivots after elimination
    """
    return len(row_reduce(matrix)[1])


def kernel_basis(matrix: Sequence[Sequence[Any]], columns: Optional[int] = None) -> List[Vector]:
    """
    Basis of the null space.

    Args:
        matrix: Matrix M
        columns: Column count, needed when ``matrix`` has no rows

    Returns:
        One vector per free column of {x : Mx = 0}, free entry set to 1
    """
    if columns is None:
        columns = len(matrix[0]) if matrix else 0
    zero = _zero_like(matrix)
    one = zero + 1
    if not matrix:
        return [[one if i == j else zero for i in range(columns)] for j in range(columns)]
    reduced, pivots = row_reduce(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(columns):
        if free in pivot_set:
            continue
        vector = [zero] * columns
        vector[free] = one
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row_index][free]
        basis.append(vector)
    return basis


def column_space_basis(matrix: Sequence[Sequence[Any]]) -> List[int]:
    """Indices of the pivot columns, whose originals span the column space."""
    return row_reduce(matrix)[1]


def solve(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> Optional[Vector]:
    """
    Particular solution of Mx = rhs with every free variable set to zero.

    Args:
        matrix: Coefficient matrix M
        rhs: Right-hand side, one entry per row

    Returns:
        A solution x, or None when the system is inconsistent
    """
    columns = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [value] for row, value in zip(matrix, rhs)]
    reduced, pivots = row_reduce(augmented)
    if columns in pivots:
        return None
    zero = _zero_like(augmented)
    solution = [zero] * columns
    for row_index, pivot in enumerate(pivots):
        solution[pivot] = reduced[row_index][columns]
    return solution


def determinant(matrix: Sequence[Sequence[Any]]) -> Any:
    """
    Bareiss fraction-free determinant.

    Args:
        matrix: Square matrix

    Returns:
        det(matrix); 1 for the empty matrix
    """
    rows = copy_matrix(matrix)
    size = len(rows)
    if size == 0:
        return ZERO + 1
    zero = _zero_like(rows)
    sign = 1
    previous = zero + 1
    for k in range(size - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, size) if rows[i][k]), None)
            if swap is None:
                return zero
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / previous
        previous = rows[k][k]
    result = rows[size - 1][size - 1]
    return result if sign > 0 else -result


def inverse(matrix: Sequence[Sequence[Any]]) -> Matrix:
    """
    Inverse by elimination on [M | I].

    Args:
        matrix: Square matrix

    Returns:
        M^-1

    Raises:
        SingularMatrixError: If M is singular
    """
    size = len(matrix)
    zero = _zero_like(matrix)
    one = zero + 1
    augmented = [
        list(row) + [one if i == j else zero for j in range(size)] for i, row in enumerate(matrix)
    ]
    reduced, pivots = row_reduce(augmented)
    if pivots[:size] != list(range(size)):
        raise SingularMatrixError("matrix is singular")
    return [row[size:] for row in reduced]


def independent_subset(vectors: Sequence[Sequence[Any]]) -> List[int]:
    """
    Greedy maximal independent subset.

    Args:
        vectors: Vectors of equal length

    Returns:
        Indices of the chosen vectors, in increasing order
    """
    if not vectors:
        return []
    return column_space_basis(transpose(vectors))


class SpanSolver:
    """
    Coordinates with respect to a fixed list of independent column vectors.

    The elimination is done once; each query is a matrix-vector product.
    """

    def __init__(self, columns: Sequence[Sequence[Any]], dimension: int) -> None:
        self.size = len(columns)
        self.dimension = dimension
        zero = _zero_like(columns)
        one = zero + 1
        matrix = transpose(columns, dimension) if columns else [[] for _ in range(dimension)]
        augmented = [
            list(matrix[i]) + [one if i == j else zero for j in range(dimension)]
            for i in range(dimension)
        ]
        reduced, pivots = row_reduce(augmented)
        if pivots[: self.size] != list(range(self.size)):
            raise SingularMatrixError("spanning vectors are linearly dependent")
        self._eliminator = [row[self.size :] for row in reduced]

    def coordinates(self, vector: Sequence[Any]) -> Optional[Vector]:
        """Coefficients c with sum(c_i * column_i) == vector, or None."""
        image = mat_vec(self._eliminator, vector)
        if any(image[self.size :]):
            return None
        return image[: self.size]

    def contains(self, vector: Sequence[Any]) -> bool:
        return self.coordinates(vector) is not None


def in_span(vectors: Sequence[Sequence[Any]], target: Sequence[Any]) -> bool:
    """
    Membership test by rank comparison.

    Args:
        vectors: Spanning vectors, possibly dependent
        target: Vector to test

    Returns:
        True when target lies in the span; the zero vector always does
    """
    if not any(target):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(target)]) == rank(vectors)
