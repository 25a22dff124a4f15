"""Rank and determinantal membership tests.

``check_membership_gnd`` decides whether a table over words of length
``n >= 2d - 1`` is tabulated by some GUSSF quasi-realization of dimension
at most ``d``. ``check_markov_invariants`` scans the 2x2 determinants
characterizing tables of (unconstrained) first-order Markov chains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import Alphabet, Arithmetic, DistributionTable, format_scalar, max_abs, shortlex_words
from .errors import LengthBudgetExceeded
from .hankel import RankReport, build_partial_hankel, hankel_block, rank
from .linalg import det, inverse, rank_with_pivots


@dataclass(frozen=True)
class MinorWitness:
    """A non-vanishing minor ``det [p(w_j v_i)]``.

    ``condition`` says which test produced it (``"a"``, ``"b"`` or
    ``"markov"``); ``labels`` carries extra naming, e.g. the ``(u, u', v,
    w, a)`` tuple of a Markov determinant.
    """

    row_words: tuple
    col_words: tuple
    det_value: object
    condition: str = "a"
    labels: dict | None = None

    def recompute(self, table: DistributionTable):
        return det(hankel_block(table, self.row_words, self.col_words), table.arith)

    def to_dict(self, alphabet: Alphabet) -> dict:
        fmt = alphabet.format_word
        out = {
            "condition": self.condition,
            "row_words": [fmt(v) for v in self.row_words],
            "col_words": [fmt(w) for w in self.col_words],
            "det": format_scalar(self.det_value),
        }
        if self.labels:
            out["labels"] = {k: (fmt(v) if isinstance(v, tuple) else alphabet.symbols[v])
                             for k, v in self.labels.items()}
        return out


@dataclass(frozen=True)
class ConditionB:
    rank_half_rows: int
    rank_half_cols: int
    rank_short: int
    offending_word: tuple | None = None
    offending_axis: str | None = None
    witness: MinorWitness | None = None

    @property
    def passed(self) -> bool:
        return self.rank_half_rows == self.rank_half_cols == self.rank_short

    def to_dict(self, alphabet: Alphabet) -> dict:
        out = {"rank_half_rows": self.rank_half_rows, "rank_half_cols": self.rank_half_cols,
               "rank_short": self.rank_short, "pass": self.passed}
        if self.offending_word is not None:
            out["offending_word"] = alphabet.format_word(self.offending_word)
            out["offending_axis"] = self.offending_axis
        return out


@dataclass(frozen=True)
class MembershipReport:
    model: str
    passed: bool
    arith: Arithmetic
    d: int | None = None
    condition_a: dict | None = None
    condition_b: ConditionB | None = None
    witnesses: list = field(default_factory=list)
    verdict: str = ""

    def to_dict(self, alphabet: Alphabet) -> dict:
        out = {"model": self.model}
        if self.d is not None:
            out["d"] = self.d
        out["passed"] = self.passed
        out["verdict"] = self.verdict
        if self.condition_a is not None:
            out["condition_a"] = dict(self.condition_a)
        if self.condition_b is not None:
            out["condition_b"] = self.condition_b.to_dict(alphabet)
        out["witnesses"] = [w.to_dict(alphabet) for w in self.witnesses]
        out.update(self.arith.describe())
        return out


def _bordered_witness(M: np.ndarray, rows, cols, R0, C0, arith: Arithmetic):
    """First entry of the Schur complement of ``M[R0, C0]`` that is non-zero.

    A non-zero Schur entry at ``(i, j)`` means the minor on rows
    ``R0 + [i]`` and columns ``C0 + [j]`` is non-singular. Returns the
    indices, or ``None`` when every entry vanishes.
    """
    ri = [rows.index(v) for v in R0]
    ci = [cols.index(w) for w in C0]
    if ri:
        Vinv = inverse(M[np.ix_(ri, ci)], arith)
        S = M - M[:, ci] @ Vinv @ M[ri, :]
    else:
        S = M
    scale = max(max_abs(M), 1.0)
    best = None
    for i in range(S.shape[0]):
        for j in range(S.shape[1]):
            if not arith.is_zero(S[i, j], scale):
                return i, j
            if best is None or abs(float(S[i, j])) > abs(float(S[best])):
                best = (i, j)
    return None if arith.exact else best


def condition_b(table: DistributionTable, d: int, short: RankReport | None = None) -> ConditionB:
    """Compare ranks of the two half-length blocks with the short block.

    On failure the report names the first (shortlex) long row or column
    escaping the span of the short pivots, together with a non-vanishing
    bordered minor.
    """
    n = table.n
    hi, lo = (n + 1) // 2, n // 2
    if short is None:
        short = rank(build_partial_hankel(table, d - 1, d - 1))
    tall = build_partial_hankel(table, hi, lo)
    wide = build_partial_hankel(table, lo, hi)
    r_tall = rank(tall).rank
    r_wide = rank(wide).rank
    result = ConditionB(r_tall, r_wide, short.rank)
    if result.passed:
        return result
    for h, r_h in ((tall, r_tall), (wide, r_wide)):
        if r_h == short.rank:
            continue
        hit = _bordered_witness(h.entries, h.row_words, h.col_words,
                                short.pivot_rows, short.pivot_cols, table.arith)
        if hit is None:
            continue
        v, w = h.row_words[hit[0]], h.col_words[hit[1]]
        axis, word = ("row", v) if len(v) > d - 1 else ("col", w)
        R = tuple(short.pivot_rows) + (v,)
        C = tuple(short.pivot_cols) + (w,)
        value = det(hankel_block(table, R, C), table.arith)
        return ConditionB(r_tall, r_wide, short.rank, word, axis,
                          MinorWitness(R, C, value, condition="b"))
    return result


def enumerate_failing_minors(table: DistributionTable, d: int, limit: int = 10) -> list:
    """Non-vanishing ``(d+1) x (d+1)`` minors of the block of words of length ``<= d-1``.

    Row combinations are the outer loop and column combinations the inner
    one, both in shortlex combination order. Stops after ``limit`` hits.
    """
    if table.n < 2 * d - 1:
        raise LengthBudgetExceeded(f"d={d} needs n >= {2 * d - 1}, table has n={table.n}")
    h = build_partial_hankel(table, d - 1, d - 1)
    if rank(h).rank <= d:
        return []
    arith = table.arith
    out = []
    scale = max(max_abs(h.entries), 1.0) ** (d + 1)
    idx = range(len(h.row_words))
    for ri in itertools.combinations(idx, d + 1):
        for ci in itertools.combinations(range(len(h.col_words)), d + 1):
            value = det(h.entries[np.ix_(ri, ci)], arith)
            if not arith.is_zero(value, scale):
                out.append(MinorWitness(tuple(h.row_words[i] for i in ri),
                                        tuple(h.col_words[j] for j in ci), value))
                if len(out) >= limit:
                    return out
    return out


def check_membership_gnd(table: DistributionTable, d: int, limit: int = 10) -> MembershipReport:
    """Decide membership in the image of the dimension-``d`` model at length ``n``.

    Condition (a): ``rk P_{d-1,d-1} <= d``. Condition (b):
    ``rk P_{ceil(n/2),floor(n/2)} = rk P_{floor(n/2),ceil(n/2)} = rk P_{d-1,d-1}``.
    Both together are equivalent to membership when ``n >= 2d - 1``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if table.n < 2 * d - 1:
        raise LengthBudgetExceeded(f"d={d} needs n >= {2 * d - 1}, table has n={table.n}")
    short = rank(build_partial_hankel(table, d - 1, d - 1))
    cond_a = {"rank_found": short.rank, "bound": d, "pass": short.rank <= d}
    cond_b = condition_b(table, d, short)
    witnesses = []
    if not cond_a["pass"]:
        witnesses.extend(enumerate_failing_minors(table, d, limit))
    if cond_b.witness is not None and len(witnesses) < limit:
        witnesses.append(cond_b.witness)
    passed = cond_a["pass"] and cond_b.passed
    return MembershipReport(
        model="finite-dim", d=d, passed=passed, arith=table.arith, condition_a=cond_a,
        condition_b=cond_b, witnesses=witnesses,
        verdict="member" if passed else "non-member")


def probe_conjecture(table: DistributionTable, d: int) -> dict:
    """Do all ``(d+1)``-minors with ``|w_j v_i| <= n`` vanish while (b) fails?

    Every such minor lives in one of the blocks ``P_{k, n-k}``, so the
    minors vanish iff each of those blocks has rank at most ``d``.
    """
    ranks = [rank(build_partial_hankel(table, k, table.n - k)).rank for k in range(table.n + 1)]
    minors_vanish = max(ranks) <= d
    report = check_membership_gnd(table, d, limit=1)
    return {
        "all_minors_vanish": minors_vanish,
        "block_ranks": ranks,
        "member": report.passed,
        "minors_only": minors_vanish and not report.passed,
    }


def _markov_block(table: DistributionTable, a: int, k: int):
    """Rows ``a u`` with ``|u| <= n - 1 - k``, columns ``v`` with ``|v| <= k``."""
    rows = tuple((a,) + u for u in shortlex_words(table.alphabet, table.n - 1 - k))
    cols = tuple(shortlex_words(table.alphabet, k))
    return rows, cols, hankel_block(table, rows, cols)


def check_markov_invariants(table: DistributionTable, limit: int = 10) -> MembershipReport:
    """Scan ``det [[p(vau), p(wau)], [p(vau'), p(wau')]]`` over admissible words.

    Admissible means all four strings have length at most ``n``. Every such
    determinant is a 2x2 minor of one block ``[p(v a u)]`` with
    ``|v| <= k`` and ``|u| <= n - 1 - k``, so all vanish iff every block has
    rank at most one. Membership in the Markov model is only claimed for
    ``n >= 2|alphabet| - 1``.
    """
    arith = table.arith
    witnesses = []
    failed = False
    seen = set()
    for a in range(len(table.alphabet)):
        for k in range(table.n):
            rows, cols, M = _markov_block(table, a, k)
            r, ri, ci = rank_with_pivots(M, arith)
            if r <= 1:
                continue
            failed = True
            if len(witnesses) >= limit:
                continue
            R = (rows[ri[0]], rows[ri[1]])
            C = (cols[ci[0]], cols[ci[1]])
            key = (R, C)
            if key in seen:
                continue
            seen.add(key)
            value = det(hankel_block(table, R, C), arith)
            labels = {"u": R[0][1:], "u'": R[1][1:], "v": C[0], "w": C[1], "a": a}
            witnesses.append(MinorWitness(R, C, value, condition="markov", labels=labels))
    passed = not failed
    guaranteed = table.n >= 2 * len(table.alphabet) - 1
    if not passed:
        verdict = "non-member"
    elif guaranteed:
        verdict = "member"
    else:
        verdict = "determinants-pass (membership not guaranteed)"
    return MembershipReport(model="markov", passed=passed, arith=arith, witnesses=witnesses,
                            verdict=verdict)


__all__ = [
    "ConditionB", "MembershipReport", "MinorWitness", "check_markov_invariants",
    "check_membership_gnd", "condition_b", "enumerate_failing_minors",
    "probe_conjecture",
]
