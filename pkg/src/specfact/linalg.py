"""Exact Gaussian elimination over a field.

The routines are generic over any value type supporting field arithmetic
and ``is_zero`` (FieldElement or RationalFn).  Pivoting picks the first
nonzero entry: exact arithmetic needs no magnitude-based pivoting and a
fixed rule keeps results reproducible.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import SingularSystemError


def solve_square(matrix: Sequence[Sequence], rhs_columns: Sequence[Sequence]) -> list[list]:
    """Solve A X = B exactly for square A; B given as rows of width k.

    Returns X as a list of n rows of width k.  Raises SingularSystemError
    when A is exactly singular.
    """
    n = len(matrix)
    k = len(rhs_columns[0]) if n else 0
    aug = [list(matrix[i]) + list(rhs_columns[i]) for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not aug[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            raise SingularSystemError("singular system: inconsistent input")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        row = aug[col]
        for j in range(col, n + k):
            row[j] = row[j] * inv
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor.is_zero():
                continue
            other = aug[r]
            for j in range(col, n + k):
                other[j] = other[j] - factor * row[j]
    return [aug[i][n:] for i in range(n)]


def solve_particular(matrix: Sequence[Sequence], rhs: Sequence, zero) -> Optional[list]:
    """One exact solution of a possibly rectangular system A x = b, with
    free variables set to zero; None when the system is inconsistent."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [list(matrix[i]) + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        pivot = None
        for i in range(r, rows):
            if not aug[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col].inverse()
        for j in range(col, cols + 1):
            aug[r][j] = aug[r][j] * inv
        for i in range(rows):
            if i == r:
                continue
            factor = aug[i][col]
            if factor.is_zero():
                continue
            for j in range(col, cols + 1):
                aug[i][j] = aug[i][j] - factor * aug[r][j]
        pivots.append(col)
        r += 1
    for i in range(r, rows):
        if not aug[i][cols].is_zero():
            return None
    solution = [zero] * cols
    for i, col in enumerate(pivots):
        solution[col] = aug[i][cols]
    return solution


def determinant(matrix: Sequence[Sequence], one) -> object:
    """Exact determinant by fraction-free-in-spirit elimination over the
    entry field; `one` is the multiplicative identity of the entry type."""
    n = len(matrix)
    if n == 0:
        return one
    work = [list(row) for row in matrix]
    det = one
    sign_flip = False
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not work[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return one - one
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign_flip = not sign_flip
        p = work[col][col]
        det = det * p
        inv = one / p
        for r in range(col + 1, n):
            factor = work[r][col]
            if factor.is_zero():
                continue
            factor = factor * inv
            for j in range(col + 1, n):
                work[r][j] = work[r][j] - factor * work[col][j]
    if sign_flip:
        det = (one - one) - det
    return det
