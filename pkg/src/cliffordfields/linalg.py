"""Exact determinants over commutative rings (rationals, polynomial rings)."""

from __future__ import annotations

from typing import Callable, Sequence


def det_laplace(mat: Sequence[Sequence]):
    """Cofactor expansion along the first row. Meant for small matrices."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = None
    for j, a in enumerate(mat[0]):
        if a == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = a * det_laplace(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return mat[0][0] * 0
    return total


def det_bareiss(mat: Sequence[Sequence], exact_div: Callable):
    """Fraction-free Gaussian elimination (Bareiss).

    Every intermediate quotient is exact in an integral domain, so
    ``exact_div(a, b)`` only ever sees divisible pairs.
    """
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[0][0] * 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[i][j] * piv - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else exact_div(v, prev)
            a[i][k] = a[i][k] * 0
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det
