"""Exact and modular linear algebra kernels.

All rank/nullspace decisions in this package are made either over the
rationals (fraction-free Bareiss elimination, Gauss-Jordan over
``fractions.Fraction``) or over the prime field GF(p) with p = 2^31 - 1
(vectorized numpy elimination, used only where a one-sided bound or a
probabilistic answer is acceptable).  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

MERSENNE31 = 2**31 - 1


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination.

    The input is consumed (mutated in place); pass a copy if it matters.
    Bareiss' division is exact at every step, so all intermediates stay
    integers.
    """
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            ri = rows[i]
            rr = rows[r]
            f = ri[c]
            if f:
                for j in range(c, n):
                    ri[j] = (ri[j] * piv - f * rr[j]) // prev
            elif piv != prev:
                # rows untouched by the pivot still pick up the piv/prev scaling
                for j in range(c, n):
                    ri[j] = (ri[j] * piv) // prev
        prev = piv
        rank += 1
        r += 1
        if r == m:
            break
    return rank


def fraction_rref(rows: list[list[Fraction]]) -> tuple[list[int], list[list[Fraction]]]:
    """Reduced row echelon form over Q.

    Returns ``(pivot_cols, reduced)`` where ``reduced`` keeps only the
    nonzero rows, the k-th of which has its pivot 1 in column
    ``pivot_cols[k]`` and zeros in every other pivot column.
    """
    if not rows:
        return [], []
    m, n = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        rr = rows[r]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for j in range(c, n):
                    if rr[j]:
                        ri[j] -= f * rr[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, rows[: len(pivots)]


def clear_denominators(row: list[Fraction]) -> list[int]:
    """Scale a rational row to integers (rank is unaffected by row scaling)."""
    lcm = 1
    for x in row:
        d = x.denominator
        if d != 1:
            g = _gcd(lcm, d)
            lcm = lcm // g * d
    return [int(x * lcm) for x in row]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def modp_rank(matrix: np.ndarray, p: int = MERSENNE31) -> int:
    """Rank over GF(p).  Always a lower bound for the rank over Q."""
    a = np.array(matrix, dtype=np.int64) % p
    m, n = a.shape
    rank = 0
    r = 0
    for c in range(n):
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        rest = a[r + 1 :]
        if rest.size:
            factors = rest[:, c]
            mask = factors != 0
            if mask.any():
                rest[mask] = (rest[mask] - factors[mask, None] * a[r][None, :]) % p
        rank += 1
        r += 1
        if r == m:
            break
    return rank


def modp_nullity(matrix: np.ndarray, p: int = MERSENNE31) -> int:
    """Nullity over GF(p); an upper bound for the nullity over Q."""
    m = np.asarray(matrix)
    if m.size == 0:
        return m.shape[1] if m.ndim == 2 else 0
    return m.shape[1] - modp_rank(m, p)
