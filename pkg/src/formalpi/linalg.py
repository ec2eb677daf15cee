"""Exact dense linear algebra over Fractions and dual numbers.

Matrices are lists of lists.  Pivots are chosen among ring units, so the same
routines run unchanged on :class:`~formalpi.scalars.Dual` entries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import NotInvertible
from .scalars import is_unit, real_part

__all__ = ["identity", "matmul", "transpose", "inverse", "determinant", "signature"]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(row) for row in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def inverse(a):
    """Gauss-Jordan inverse; raises :class:`NotInvertible` on a singular matrix."""
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if is_unit(m[r][col])), None)
        if pivot is None:
            raise NotInvertible("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _leibniz(a):
    n = len(a)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(sign)
        for i, j in enumerate(perm):
            term = term * a[i][j]
        total = total + term
    return total


def determinant(a):
    n = len(a)
    m = [list(row) for row in a]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if is_unit(m[r][col])), None)
        if pivot is None:
            # no unit pivot: the column is zero (rationals) or nilpotent (duals)
            rest = [row[col:] for row in m[col:]]
            return det * _leibniz(rest)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / p
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def signature(a) -> int:
    """Signature ``n_plus - n_minus`` of a symmetric matrix via congruence.

    Dual entries are reduced to their real parts first.
    """
    n = len(a)
    m = [[Fraction(real_part(x)) for x in row] for row in a]
    sig = 0
    k = 0
    while k < n:
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    k += 1  # zero row: null direction
                    continue
                # x_k -> x_k + x_j makes the diagonal entry 2*m[k][j] != 0
                m[k] = [x + y for x, y in zip(m[k], m[j])]
                for row in m:
                    row[k] = row[k] + row[j]
        p = m[k][k]
        sig += 1 if p > 0 else -1
        for r in range(k + 1, n):
            if m[r][k] != 0:
                factor = m[r][k] / p
                m[r] = [x - factor * y for x, y in zip(m[r], m[k])]
        for r in range(k + 1, n):
            m[k][r] = Fraction(0)  # the matching column operation
        k += 1
    return sig
