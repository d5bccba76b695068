"""Exact dense linear algebra over Z[zeta] and Q(zeta).

Matrices come in as lists of rows of CyclotomicRational.  Denominators are
cleared once up front so that the inner loops only touch Python ints,
stored as (re, zc) pairs.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .exactfield import CyclotomicRational

# Z[zeta] as int pairs; zeta**2 = -zeta - 1


def _mul(x, y):
    a, b = x
    c, d = y
    bd = b * d
    return (a * c - bd, a * d + b * c - bd)


def _add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _exact_div(x, y):
    # x / y assumed to lie in Z[zeta]
    c = (y[0] - y[1], -y[1])
    n = y[0] * y[0] - y[0] * y[1] + y[1] * y[1]
    num = _mul(x, c)
    q0, r0 = divmod(num[0], n)
    q1, r1 = divmod(num[1], n)
    if r0 or r1:
        raise ArithmeticError("inexact division in Z[zeta]")
    return (q0, q1)


_ZERO = (0, 0)
_ONE = (1, 0)


def clear_denominators(rows):
    """Return (L, int-pair matrix) with ``matrix == L * rows`` entrywise."""
    L = 1
    for row in rows:
        for x in row:
            L = math.lcm(L, x.re.denominator, x.zc.denominator)
    scaled = [
        [(int(x.re * L), int(x.zc * L)) for x in row]
        for row in rows
    ]
    return L, scaled


def _to_cr(x, scale=1) -> CyclotomicRational:
    return CyclotomicRational(Fraction(x[0], scale), Fraction(x[1], scale))


def berkowitz_pairs(A):
    """Coefficients [1, p1, ..., pn] of det(lambda*I - A) for an int-pair matrix.

    Division free; O(n^4) ring operations.
    """
    n = len(A)
    poly = [_ONE]
    for k in range(n):
        # A_k is the leading (k+1)x(k+1) block; a = A[k][k]
        a = A[k][k]
        R = A[k][:k]
        C = [A[i][k] for i in range(k)]
        # Toeplitz column: 1, -a, -R C, -R A' C, ..., -R A'^(k-1) C
        col = [_ONE, (-a[0], -a[1])]
        v = C
        for _ in range(k):
            s = _ZERO
            for x, y in zip(R, v):
                if (x[0] or x[1]) and (y[0] or y[1]):
                    s = _add(s, _mul(x, y))
            col.append((-s[0], -s[1]))
            # v <- A' v with A' the leading k x k block
            v = [_dot(A[i][:k], v) for i in range(k)]
        # new poly has length k+2; poly has length k+1
        new = []
        for i in range(k + 2):
            s = _ZERO
            for j in range(max(0, i - (len(col) - 1)), min(i, k) + 1):
                t = col[i - j]
                p = poly[j]
                if (t[0] or t[1]) and (p[0] or p[1]):
                    s = _add(s, _mul(t, p))
            new.append(s)
        poly = new
    return poly


def _dot(row, v):
    s0 = s1 = 0
    for x, y in zip(row, v):
        if (x[0] or x[1]) and (y[0] or y[1]):
            a, b = x
            c, d = y
            bd = b * d
            s0 += a * c - bd
            s1 += a * d + b * c - bd
    return (s0, s1)


def charpoly(rows) -> list[CyclotomicRational]:
    """Coefficients [1, p1, ..., pn] of det(lambda*I - M), exactly."""
    n = len(rows)
    if n == 0:
        return [CyclotomicRational(1)]
    L, A = clear_denominators(rows)
    poly = berkowitz_pairs(A)
    # det(lambda I - L M) = L^n det((lambda/L) I - M): coefficient k scales by L^k
    return [_to_cr(c, L**k) for k, c in enumerate(poly)]


def bareiss_det_pairs(A) -> tuple[int, int]:
    """Determinant of an int-pair matrix by fraction-free elimination."""
    n = len(A)
    if n == 0:
        return _ONE
    M = [list(row) for row in A]
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if M[k][k] == _ZERO:
            for i in range(k + 1, n):
                if M[i][k] != _ZERO:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return _ZERO
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _sub(_mul(M[i][j], pivot), _mul(M[i][k], M[k][j]))
                M[i][j] = _exact_div(num, prev)
        prev = pivot
    d = M[n - 1][n - 1]
    return d if sign == 1 else (-d[0], -d[1])


def det(rows) -> CyclotomicRational:
    """Exact determinant of a square matrix of CyclotomicRational."""
    n = len(rows)
    if n == 0:
        return CyclotomicRational(1)
    L, A = clear_denominators(rows)
    return _to_cr(bareiss_det_pairs(A), L**n)
