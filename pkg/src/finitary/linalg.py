"""Dense linear algebra over the rationals or with a float tolerance.

Rational matrices are scaled row-wise to integer matrices and reduced by
fraction-free (Bareiss) elimination, so intermediate entries stay integral
and no gcd work happens inside the loop. Float matrices use partial
pivoting with a tolerance relative to the largest entry.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .core import Arithmetic, max_abs


def _integer_rows(M) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; return rows and scales."""
    rows, scales = [], []
    for row in M:
        lcm = 1
        for v in row:
            lcm = math.lcm(lcm, Fraction(v).denominator)
        rows.append([int(Fraction(v) * lcm) for v in row])
        scales.append(lcm)
    return rows, scales


def _bareiss_pivots(rows: list[list[int]]) -> tuple[list[int], int]:
    """Pivot columns of a fraction-free forward elimination (in place).

    Returns the pivot columns and the signed product of pivots divided as
    Bareiss prescribes, which for a square full-rank input is ``det``.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    r = 0
    sign = 1
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, n):
                ri[j] = (p * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots, sign * prev


def _float_pivots(M: np.ndarray, tol: float) -> list[int]:
    A = np.array(M, dtype=np.float64, copy=True)
    m, n = A.shape
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        i = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[i, c]) <= tol * scale:
            continue
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r + 1:, c:] -= np.outer(A[r + 1:, c] / A[r, c], A[r, c:])
        pivots.append(c)
        r += 1
    return pivots


def pivot_columns(M, arith: Arithmetic) -> list[int]:
    """Indices of the greedy (leftmost) maximal independent set of columns."""
    M = np.asarray(M)
    if M.size == 0:
        return []
    if arith.exact:
        rows, _ = _integer_rows(M)
        return _bareiss_pivots(rows)[0]
    return _float_pivots(M, arith.tol)


def rank_with_pivots(M, arith: Arithmetic) -> tuple[int, list[int], list[int]]:
    """Rank together with greedy pivot rows and columns.

    The column set is the leftmost independent set; the row set is the
    topmost independent set of rows restricted to those columns, which
    has the same dependencies as the full rows. The submatrix on the two
    sets is therefore invertible.
    """
    M = np.asarray(M)
    if M.size == 0:
        return 0, [], []
    cols = pivot_columns(M, arith)
    if not cols:
        return 0, [], []
    rows = pivot_columns(M[:, cols].T, arith)
    return len(cols), rows, cols


def rank(M, arith: Arithmetic) -> int:
    return len(pivot_columns(M, arith))


def det(M, arith: Arithmetic):
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1) if arith.exact else 1.0
    if arith.exact:
        rows, scales = _integer_rows(M)
        pivots, d = _bareiss_pivots(rows)
        if len(pivots) < n:
            return Fraction(0)
        return Fraction(d, math.prod(scales))
    return float(np.linalg.det(M.astype(np.float64)))


def solve(A, B, arith: Arithmetic) -> np.ndarray:
    """Solve ``A X = B`` for square invertible ``A``.

    Exact mode runs Gauss-Jordan on fractions; float mode defers to LAPACK.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if not arith.exact:
        return np.linalg.solve(A.astype(np.float64), B.astype(np.float64))
    vector = B.ndim == 1
    n = A.shape[0]
    Bm = B.reshape(n, -1)
    aug = [[Fraction(v) for v in A[i]] + [Fraction(v) for v in Bm[i]] for i in range(n)]
    width = len(aug[0]) if n else 0
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise np.linalg.LinAlgError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            f = aug[i][c]
            if i != c and f != 0:
                rc = aug[c]
                aug[i] = [aug[i][j] - f * rc[j] for j in range(width)]
    out = np.empty((n, Bm.shape[1]), dtype=object)
    for i in range(n):
        out[i, :] = aug[i][n:]
    return out.reshape(-1) if vector else out


def inverse(A, arith: Arithmetic) -> np.ndarray:
    return solve(A, arith.eye(np.asarray(A).shape[0]), arith)


def in_span(columns, target, arith: Arithmetic) -> bool:
    """Whether ``target`` lies in the span of the given columns."""
    columns = np.asarray(columns)
    if columns.size == 0:
        return all(arith.is_zero(v, max(max_abs(target), 1.0)) for v in np.ravel(target))
    stacked = np.column_stack([columns, np.asarray(target).reshape(-1, 1)])
    return rank(stacked, arith) == rank(columns, arith)
