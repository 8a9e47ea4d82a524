"""Exact integer linear algebra for the small matrices used throughout."""

from __future__ import annotations

from typing import List, Sequence


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate value is an integer, so there is no rounding and no
    rational arithmetic.
    """
    n = len(matrix)
    if n == 0:
        return 1
    m: List[List[int]] = [list(map(int, row)) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def leading_minors(matrix: Sequence[Sequence[int]]) -> List[int]:
    n = len(matrix)
    return [det([row[:r] for row in matrix[:r]]) for r in range(1, n + 1)]


def is_symmetric(matrix: Sequence[Sequence[int]]) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    return all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i))
