"""Exact linear algebra over the rationals.

Rational matrices go through sympy's `DomainMatrix` over QQ. Only the
fraction-free determinant stays generic, for polynomial and GF(p) entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence, TypeVar

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

T = TypeVar("T")

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return [[Fraction(value) for value in row] for row in rows]


def transpose(rows: Sequence[Sequence[T]]) -> list[list[T]]:
    if not rows:
        return []
    return [list(column) for column in zip(*rows)]


def domain_matrix(rows: Sequence[Sequence[Any]], n_cols: int | None = None) -> DomainMatrix:
    """Rows of rationals as a dense `DomainMatrix` over QQ."""
    exact = to_matrix(rows)
    if n_cols is None:
        n_cols = len(exact[0]) if exact else 0
    elements = [[QQ(v.numerator, v.denominator) for v in row] for row in exact]
    return DomainMatrix(elements, (len(exact), n_cols), QQ)


def from_domain_matrix(matrix: DomainMatrix) -> Matrix:
    return [[Fraction(int(v.p), int(v.q)) for v in row] for row in matrix.to_Matrix().tolist()]


def rank(rows: Sequence[Sequence[Any]]) -> int:
    if not rows or not rows[0]:
        return 0
    return domain_matrix(rows).rank()


def bareiss_det(
    rows: Sequence[Sequence[T]],
    *,
    zero: T,
    one: T,
    is_zero: Callable[[T], bool],
    exact_div: Callable[[T, T], T],
) -> T:
    """Bareiss determinant over any integral domain given its exact division."""
    size = len(rows)
    if size == 0:
        return one
    if any(len(row) != size for row in rows):
        raise ValueError("Determinant of a non-square matrix")
    work = [list(row) for row in rows]
    sign_flip = False
    previous = one
    for k in range(size - 1):
        if is_zero(work[k][k]):
            swap = next((i for i in range(k + 1, size) if not is_zero(work[i][k])), None)
            if swap is None:
                return zero
            work[k], work[swap] = work[swap], work[k]
            sign_flip = not sign_flip
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = exact_div(pivot * work[i][j] - work[i][k] * work[k][j], previous)
        previous = pivot
    result = work[size - 1][size - 1]
    return -result if sign_flip else result


def det(rows: Sequence[Sequence[Any]]) -> Fraction:
    """Exact determinant of a rational matrix."""
    if len(rows) == 0:
        return Fraction(1)
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("Determinant of a non-square matrix")
    value = QQ.to_sympy(domain_matrix(rows).det())
    return Fraction(int(value.p), int(value.q))


def rref(rows: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if not rows:
        return [], []
    reduced, pivots = domain_matrix(rows).rref()
    return from_domain_matrix(reduced)[: len(pivots)], list(pivots)


def nullspace(rows: Sequence[Sequence[Any]], n_cols: int | None = None) -> list[list[Fraction]]:
    """Kernel basis as a list of vectors."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    kernel = domain_matrix(rows, n_cols).nullspace()
    return from_domain_matrix(kernel)


def solve(rows: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Fraction] | None:
    """A solution of rows·x = rhs, or None when inconsistent."""
    n_cols = len(rows[0]) if rows else 0
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None
    solution = [Fraction(0)] * n_cols
    for row, p in zip(reduced, pivots):
        solution[p] = row[n_cols]
    return solution


def matmul(left: Sequence[Sequence[Any]], right: Sequence[Sequence[Any]]) -> Matrix:
    if not left or not right:
        return [[] for _ in left]
    product = domain_matrix(left).matmul(domain_matrix(right))
    return from_domain_matrix(product)


def submatrix(rows: Sequence[Sequence[T]], row_idx: Sequence[int], col_idx: Sequence[int] | None = None) -> list[list[T]]:
    if col_idx is None:
        return [list(rows[i]) for i in row_idx]
    return [[rows[i][j] for j in col_idx] for i in row_idx]


def proportional(first: Sequence[Fraction], second: Sequence[Fraction]) -> bool:
    return rank([list(first), list(second)]) < 2
