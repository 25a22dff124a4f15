"""Slow, obviously-correct reference computations used by the tests.

Nothing here imports the library's linear algebra: determinants use the
Leibniz formula, ranks use textbook Gaussian elimination over Fractions,
and string function values come from explicit loops.
"""

import itertools
from fractions import Fraction


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= Fraction(M[i][perm[i]])
        total += term
    return total


def gauss_rank(M):
    rows = [[Fraction(v) for v in r] for r in M]
    if not rows:
        return 0
    rank, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def all_words(k, n):
    return list(itertools.product(range(k), repeat=n))


def shortlex(k, max_len):
    return [w for m in range(max_len + 1) for w in all_words(k, m)]


def suffix_sum(values, k, n, u):
    """p(u) as an explicit sum over all completions of u to length n."""
    return sum((values[u + s] for s in all_words(k, n - len(u))), Fraction(0))


def table_dict(table):
    return {w: v for w, v in table.items()}


def hankel_matrix(values, k, n, N, M):
    rows, cols = shortlex(k, N), shortlex(k, M)
    return [[suffix_sum(values, k, n, w + v) for w in cols] for v in rows]


def matrix_product_eval(T, x, y, word):
    """y^T T[a_n] ... T[a_1] x with plain nested lists."""
    d = len(x)
    state = [Fraction(v) for v in x]
    for a in word:
        state = [sum(Fraction(T[a][i][j]) * state[j] for j in range(d)) for i in range(d)]
    return sum(Fraction(y[i]) * state[i] for i in range(d))


def trace_product(X, word):
    r = len(X[0])
    P = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for a in word:
        P = [[sum(Fraction(X[a][i][m]) * P[m][j] for m in range(r)) for j in range(r)]
             for i in range(r)]
    return sum(P[i][i] for i in range(r))


def markov_determinants(values, k, n):
    """Every determinant p(vau)p(wau') - p(wau)p(vau') with all four words of length <= n."""
    out = []
    for a in range(k):
        for lv in range(n):
            for lw in range(n):
                for lu in range(n - max(lv, lw)):
                    for lu2 in range(n - max(lv, lw)):
                        for v in all_words(k, lv):
                            for w in all_words(k, lw):
                                for u in all_words(k, lu):
                                    for u2 in all_words(k, lu2):
                                        p = lambda s: suffix_sum(values, k, n, s)  # noqa: E731
                                        det = (p(v + (a,) + u) * p(w + (a,) + u2)
                                               - p(w + (a,) + u) * p(v + (a,) + u2))
                                        out.append(((u, u2, v, w, a), det))
    return out
