"""Exact determinants of square matrices over the Laurent ring."""

from __future__ import annotations

from typing import Sequence

from .laurent import ONE, ZERO, LaurentPoly

__all__ = ["det", "det_cofactor", "det_bareiss"]

_COFACTOR_MAX = 4


def det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n <= _COFACTOR_MAX:
        return det_cofactor(matrix)
    return det_bareiss(matrix)


def det_cofactor(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(matrix)
    if n == 0:
        return ONE
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = ZERO
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * det_cofactor(minor)
        total = total - term if j % 2 else total + term
    return total


def det_bareiss(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free Gaussian elimination; every division is exact."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            lead = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - lead * row_k[j]
                row_i[j] = num.exact_div(prev) if not num.is_zero() else ZERO
            row_i[k] = ZERO
        prev = pivot
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result
