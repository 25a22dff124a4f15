"""Quasi-realizations ``((T_a), x, y)`` and their extraction from tables.

A quasi-realization evaluates a word ``v = a_1 ... a_n`` as
``y^T T_{a_n} ... T_{a_1} x``: the first letter acts on ``x`` first.
Entries may be negative, so the evaluated string function need not be
non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (Alphabet, Arithmetic, DistributionTable, RATIONAL, Word, convert_array,
                   infer_kind, max_abs)
from .errors import (ConditionAViolated, ConditionBViolated, DimensionShrink, InvalidParameters,
                     LengthBudgetExceeded)
from .hankel import RankReport, build_partial_hankel, rank
from .linalg import inverse, solve


@dataclass(frozen=True, eq=False)
class QuasiRealization:
    """Per-letter ``d x d`` matrices ``T[a]`` with vectors ``x`` and ``y``.

    ``T`` has shape ``(|alphabet|, d, d)``. Setting ``gussf=True`` asserts
    ``y^T sum_a T_a = y^T`` and is checked on construction.
    """

    alphabet: Alphabet
    T: np.ndarray
    x: np.ndarray
    y: np.ndarray
    arith: Arithmetic = RATIONAL
    gussf: bool = False

    def __post_init__(self):
        k = len(self.alphabet)
        T = self.arith.array(self.T)
        d = np.asarray(self.x).shape[0] if np.ndim(self.x) else 0
        T = T.reshape(k, d, d)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "x", self.arith.array(self.x).reshape(d))
        object.__setattr__(self, "y", self.arith.array(self.y).reshape(d))
        if self.gussf:
            res = verify_gussf(self)
            if not all(self.arith.is_zero(r, self._scale()) for r in res):
                raise InvalidParameters("y is not a left eigenvector of sum_a T_a for eigenvalue 1")

    @property
    def d(self) -> int:
        return self.x.shape[0]

    def _scale(self) -> float:
        return max(max_abs(self.y), 1.0) * max(max_abs(self.T.sum(axis=0)), 1.0)

    def _zero(self):
        return self.arith.scalar(0)

    def forward(self, word: Word) -> np.ndarray:
        """The state vector ``T_{a_n} ... T_{a_1} x``."""
        s = self.x
        for a in word:
            s = self.T[a] @ s
        return s

    def evaluate(self, word: Word):
        if self.d == 0:
            return self._zero()
        return self.y @ self.forward(word)

    __call__ = evaluate

    def tabulate(self, n: int, kind=None) -> DistributionTable:
        """Values of every word of length ``n``.

        States are shared between words with a common prefix, so the cost
        is proportional to ``|alphabet|**n * d**2``.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        k = len(self.alphabet)
        if self.d == 0:
            values = self.arith.zeros(k ** n)
        else:
            states = self.x.reshape(1, self.d)
            for _ in range(n):
                nxt = np.stack([states @ self.T[a].T for a in range(k)], axis=1)
                states = nxt.reshape(-1, self.d)
            values = states @ self.y
        if kind is None:
            kind = infer_kind(values, self.arith)
        return DistributionTable(self.alphabet, n, values, kind=kind, arith=self.arith)

    def convert(self, arith: Arithmetic) -> "QuasiRealization":
        return QuasiRealization(self.alphabet, convert_array(self.T, arith),
                                convert_array(self.x, arith), convert_array(self.y, arith),
                                arith=arith, gussf=self.gussf)

    def similar(self, S) -> "QuasiRealization":
        """Change of basis ``T_a -> S T_a S^-1``, ``x -> S x``, ``y^T -> y^T S^-1``.

        The evaluated string function is unchanged.
        """
        S = self.arith.array(S)
        Sinv = inverse(S, self.arith)
        T = np.stack([S @ t @ Sinv for t in self.T])
        return QuasiRealization(self.alphabet, T, S @ self.x, Sinv.T @ self.y,
                                arith=self.arith, gussf=self.gussf)


def evaluate(r: QuasiRealization, v: Word):
    return r.evaluate(v)


def realization_to_table(r: QuasiRealization, n: int) -> DistributionTable:
    return r.tabulate(n)


def verify_gussf(r: QuasiRealization) -> np.ndarray:
    """Residual ``y^T (sum_a T_a) - y^T``; zero iff the realization is GUSSF."""
    if r.d == 0:
        return r.arith.zeros(0)
    return r.y @ r.T.sum(axis=0) - r.y


def is_gussf(r: QuasiRealization) -> bool:
    return all(r.arith.is_zero(v, r._scale()) for v in verify_gussf(r))


def embed_dimension(r: QuasiRealization, d: int) -> QuasiRealization:
    """Pad ``T``, ``x`` and ``y`` with zeros up to dimension ``d``."""
    if d < r.d:
        raise DimensionShrink(f"cannot embed dimension {r.d} into {d}")
    k = len(r.alphabet)
    T = r.arith.zeros((k, d, d))
    T[:, :r.d, :r.d] = r.T
    x = r.arith.zeros(d)
    x[:r.d] = r.x
    y = r.arith.zeros(d)
    y[:r.d] = r.y
    return QuasiRealization(r.alphabet, T, x, y, arith=r.arith, gussf=r.gussf)


@dataclass(frozen=True, eq=False)
class BasisSelection:
    """Row words ``v_i`` and column words ``w_j`` with ``V[i, j] = p(w_j v_i)`` invertible."""

    v_words: tuple
    w_words: tuple
    V: np.ndarray
    report: RankReport = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.v_words)


def select_basis(table: DistributionTable, d: int) -> BasisSelection:
    """Shortlex-greedy bases of the block with words of length at most ``d - 1``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if table.n < 2 * d - 1:
        raise LengthBudgetExceeded(f"d={d} needs n >= {2 * d - 1}, table has n={table.n}")
    h = build_partial_hankel(table, d - 1, d - 1)
    rep = rank(h)
    V = h.submatrix(rep.pivot_rows, rep.pivot_cols)
    return BasisSelection(rep.pivot_rows, rep.pivot_cols, V, rep)


def extract_realization(table: DistributionTable, d: int) -> QuasiRealization:
    """Recover a quasi-realization of dimension ``rk P_{d-1,d-1}`` from a table.

    With ``V = [p(w_j v_i)]`` on the selected bases, ``x_i = p(v_i)``,
    ``y`` solves ``y^T V = (p(w_1), ..., p(w_r))`` and
    ``T_a = W_a V^{-1}`` where ``W_a = [p(w_j a v_i)]``.

    Raises
    ------
    ConditionAViolated
        The short block has rank above ``d``.
    ConditionBViolated
        A row or column of a long block is not spanned by short words.
    LengthBudgetExceeded
        ``table.n < 2 d - 1``.
    """
    from .invariants import condition_b

    basis = select_basis(table, d)
    if basis.rank > d:
        raise ConditionAViolated(
            f"rank of the short Hankel block is {basis.rank} > {d}", rank=basis.rank, bound=d)
    cond_b = condition_b(table, d, basis.report)
    if not cond_b.passed:
        w = cond_b.offending_word
        raise ConditionBViolated(
            f"{cond_b.offending_axis} word {table.alphabet.format_word(w)!r} is not spanned "
            f"by words of length <= {d - 1}", word=w, axis=cond_b.offending_axis)
    arith = table.arith
    r = basis.rank
    k = len(table.alphabet)
    if r == 0:
        return QuasiRealization(table.alphabet, arith.zeros((k, 0, 0)), arith.zeros(0),
                                arith.zeros(0), arith=arith, gussf=True)
    V = basis.V
    x = arith.array([table.marginal(v) for v in basis.v_words])
    target = arith.array([table.marginal(w) for w in basis.w_words])
    y = solve(V.T, target, arith)
    T = []
    for a in range(k):
        W = arith.array([[table.marginal(w + (a,) + v) for w in basis.w_words]
                         for v in basis.v_words])
        # W V^-1 == (V^-T W^T)^T
        T.append(solve(V.T, W.T, arith).T)
    out = QuasiRealization(table.alphabet, np.stack(T), x, y, arith=arith)
    if is_gussf(out):
        out = QuasiRealization(table.alphabet, out.T, out.x, out.y, arith=arith, gussf=True)
    return out
