"""Finite Hankel minors of a tabulated string function and their rank.

Orientation: rows are indexed by suffix words ``v``, columns by prefix
words ``w`` and ``entry[v][w] = p(wv)``. Both index sets are shortlex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (Alphabet, Arithmetic, DistributionTable, Word, format_scalar, shortlex_words,
                   word_index)
from .errors import LengthBudgetExceeded
from .linalg import rank_with_pivots


@dataclass(frozen=True)
class PartialHankel:
    alphabet: Alphabet
    row_words: tuple
    col_words: tuple
    entries: np.ndarray
    arith: Arithmetic

    @property
    def shape(self):
        return self.entries.shape

    def row(self, v: Word) -> np.ndarray:
        return self.entries[self.row_words.index(tuple(v))]

    def col(self, w: Word) -> np.ndarray:
        return self.entries[:, self.col_words.index(tuple(w))]

    def submatrix(self, rows, cols) -> np.ndarray:
        ri = [self.row_words.index(tuple(v)) for v in rows]
        ci = [self.col_words.index(tuple(w)) for w in cols]
        return self.entries[np.ix_(ri, ci)]

    def to_csv(self) -> str:
        """CSV dump with word labels; the empty word prints as ``□``."""
        fmt = self.alphabet.format_word
        label = lambda w: fmt(w) if w else "□"  # noqa: E731
        lines = ["v\\w," + ",".join(label(w) for w in self.col_words)]
        for v, row in zip(self.row_words, self.entries):
            lines.append(label(v) + "," + ",".join(format_scalar(x) for x in row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RankReport:
    rank: int
    pivot_rows: tuple
    pivot_cols: tuple
    arith: Arithmetic

    def to_dict(self, alphabet: Alphabet) -> dict:
        fmt = alphabet.format_word
        return {
            "rank": self.rank,
            "pivot_rows": [fmt(v) for v in self.pivot_rows],
            "pivot_cols": [fmt(w) for w in self.pivot_cols],
            **self.arith.describe(),
        }


def hankel_block(table: DistributionTable, rows, cols) -> np.ndarray:
    """Matrix ``[p(wv)]`` for arbitrary row words ``v`` and column words ``w``."""
    k = len(table.alphabet)
    out = np.empty((len(rows), len(cols)), dtype=table.values.dtype)
    for i, v in enumerate(rows):
        for j, w in enumerate(cols):
            u = tuple(w) + tuple(v)
            if len(u) > table.n:
                raise LengthBudgetExceeded(
                    f"entry p(wv) needs length {len(u)} > n={table.n}")
            out[i, j] = table.marginals(len(u))[word_index(u, k)]
    return out


def build_partial_hankel(table: DistributionTable, N: int, M: int) -> PartialHankel:
    """The minor with rows ``|v| <= N`` and columns ``|w| <= M``."""
    if N < 0 or M < 0:
        raise ValueError("N and M must be non-negative")
    if N + M > table.n:
        raise LengthBudgetExceeded(
            f"Hankel block ({N}, {M}) needs words of length {N + M} > n={table.n}")
    rows = tuple(shortlex_words(table.alphabet, N))
    cols = tuple(shortlex_words(table.alphabet, M))
    return PartialHankel(table.alphabet, rows, cols, hankel_block(table, rows, cols), table.arith)


def rank(h: PartialHankel) -> RankReport:
    r, ri, ci = rank_with_pivots(h.entries, h.arith)
    return RankReport(r, tuple(h.row_words[i] for i in ri),
                      tuple(h.col_words[j] for j in ci), h.arith)


def hankel_rank(table: DistributionTable, N: int, M: int) -> int:
    return rank(build_partial_hankel(table, N, M)).rank


def dimension(table: DistributionTable, d_bound: int) -> int:
    """Dimension of the string function, given the promise ``dim p <= d_bound``.

    Only the block with words of length at most ``d_bound - 1`` is
    inspected, which needs ``n >= 2 (d_bound - 1)``.
    """
    if d_bound < 1:
        raise ValueError("d_bound must be at least 1")
    if table.n < 2 * (d_bound - 1):
        raise LengthBudgetExceeded(
            f"dimension bound {d_bound} needs n >= {2 * (d_bound - 1)}, table has n={table.n}")
    return hankel_rank(table, d_bound - 1, d_bound - 1)
