"""
Exact Linear Algebra over Q
Thin wrappers around sympy matrices that handle empty shapes uniformly
and convert to and from the JSON representation.
"""

from typing import Any, Iterable, List, Sequence

import sympy

from .errors import ShapeMismatchError
from .rationals import format_rational, from_sympy, to_sympy


def rational_matrix(rows: Sequence[Sequence[Any]], ncols: int = 0) -> sympy.Matrix:
    """
    Build a sympy matrix of exact rationals.

    Args:
        rows: Row-major entries (int, Fraction, "p/q" strings)
        ncols: Column count used when rows is empty

    Returns:
        sympy.Matrix
    """
    rows = [list(row) for row in rows]
    if not rows:
        return sympy.zeros(0, ncols)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ShapeMismatchError("Ragged matrix rows")
    if width == 0:
        return sympy.zeros(len(rows), 0)
    return sympy.Matrix([[to_sympy(entry) for entry in row] for row in rows])


def zero_matrix(nrows: int, ncols: int) -> sympy.Matrix:
    return sympy.zeros(nrows, ncols)


def identity_matrix(size: int) -> sympy.Matrix:
    return sympy.eye(size) if size else sympy.zeros(0, 0)


def matrix_to_json(matrix: sympy.Matrix) -> List[List[str]]:
    """Serialize a rational matrix as nested lists of "p/q" strings."""
    return [
        [format_rational(from_sympy(matrix[i, j])) for j in range(matrix.cols)]
        for i in range(matrix.rows)
    ]


def matrix_from_json(rows: Sequence[Sequence[Any]], ncols: int = 0) -> sympy.Matrix:
    return rational_matrix(rows, ncols)


def is_zero(matrix: sympy.Matrix) -> bool:
    return all(entry == 0 for entry in matrix)


def rank(matrix: sympy.Matrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return int(matrix.rank())


def nullspace(matrix: sympy.Matrix) -> List[sympy.Matrix]:
    """Basis of the right kernel as column vectors."""
    if matrix.cols == 0:
        return []
    if matrix.rows == 0:
        return [sympy.eye(matrix.cols)[:, j] for j in range(matrix.cols)]
    return list(matrix.nullspace())


def hstack(columns: Iterable[sympy.Matrix], nrows: int) -> sympy.Matrix:
    """Stack column vectors (or blocks) side by side; empty input gives nrows x 0."""
    columns = [col for col in columns if col.cols > 0]
    if not columns:
        return sympy.zeros(nrows, 0)
    return sympy.Matrix.hstack(*columns)


def span_basis(matrix: sympy.Matrix) -> sympy.Matrix:
    """Columns forming a basis of the column space (nrows x dim)."""
    if matrix.cols == 0 or matrix.rows == 0:
        return sympy.zeros(matrix.rows, 0)
    basis = matrix.columnspace()
    return hstack(basis, matrix.rows)


def annihilator(basis: sympy.Matrix) -> sympy.Matrix:
    """
    Rows A with ker(A) equal to the column span of basis.

    Args:
        basis: n x m matrix whose columns span a subspace of Q^n

    Returns:
        r x n matrix, r = n - dim(span)
    """
    n = basis.rows
    if basis.cols == 0:
        return sympy.eye(n) if n else sympy.zeros(0, 0)
    rows = nullspace(basis.T)
    if not rows:
        return sympy.zeros(0, n)
    return sympy.Matrix.vstack(*[row.T for row in rows])


def submatrix(matrix: sympy.Matrix, rows: Sequence[int], cols: Sequence[int]) -> sympy.Matrix:
    if not rows or not cols:
        return sympy.zeros(len(rows), len(cols))
    return matrix.extract(list(rows), list(cols))
