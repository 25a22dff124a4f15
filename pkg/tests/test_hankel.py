from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finitary.core import Alphabet, DistributionTable, RATIONAL, floating
from finitary.errors import LengthBudgetExceeded
from finitary.hankel import build_partial_hankel, dimension, hankel_block, hankel_rank, rank
from finitary.linalg import det, inverse, rank_with_pivots, solve
from finitary.models import (MarkovParams, hmm_to_realization, markov_to_table, random_hmm,
                             random_realization, random_table, shift, HmmParams)

from oracles import all_words, gauss_rank, hankel_matrix, leibniz_det

B = Alphabet(("0", "1"))
small_fracs = st.fractions(-4, 4, max_denominator=6)


def iid(q, n):
    q = Fraction(q)
    vals = [q ** w.count(0) * (1 - q) ** w.count(1) for w in all_words(2, n)]
    return DistributionTable(B, n, vals, kind="stochastic")


def matrices(rows, cols):
    return st.lists(st.lists(small_fracs, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


class TestLinalg:
    @given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
    def test_det_matches_leibniz(self, M):
        assert det(RATIONAL.array(M), RATIONAL) == leibniz_det(M)

    @given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(
        lambda c: matrices(r, c))))
    def test_rank_matches_gauss(self, M):
        r, rows, cols = rank_with_pivots(RATIONAL.array(M), RATIONAL)
        assert r == gauss_rank(M) == len(rows) == len(cols)
        if r:
            assert leibniz_det([[M[i][j] for j in cols] for i in rows]) != 0

    @given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
    def test_solve_and_inverse(self, M):
        A = RATIONAL.array(M)
        if leibniz_det(M) == 0:
            return
        inv = inverse(A, RATIONAL)
        assert all(v == (i == j) for (i, j), v in np.ndenumerate(A @ inv))
        b = RATIONAL.array(list(range(1, len(M) + 1)))
        assert list(A @ solve(A, b, RATIONAL)) == list(b)

    def test_float_rank_uses_tolerance(self):
        M = np.array([[1.0, 2.0], [2.0, 4.0 + 1e-12]])
        assert rank_with_pivots(M, floating(1e-9))[0] == 1
        assert rank_with_pivots(M, floating(1e-14))[0] == 2

    def test_pivots_are_leftmost(self):
        M = RATIONAL.array([[0, 1, 1], [0, 2, 3]])
        assert rank_with_pivots(M, RATIONAL) == (2, [0, 1], [1, 2])


class TestBuild:
    def test_layout_of_binary_block(self):
        # Distinct symbolic-looking values: p(w) = 1 + index of w among length-4 words.
        t = DistributionTable(B, 4, list(range(1, 17)))
        h = build_partial_hankel(t, 2, 2)
        assert h.shape == (7, 7)
        assert h.row((0,))[h.col_words.index((1,))] == t.marginal((1, 0))
        for v in h.row_words:
            for w in h.col_words:
                assert h.entries[h.row_words.index(v), h.col_words.index(w)] == t.marginal(w + v)

    def test_single_entry(self):
        t = iid("1/3", 3)
        h = build_partial_hankel(t, 0, 0)
        assert h.shape == (1, 1) and h.entries[0, 0] == 1

    def test_budget(self):
        with pytest.raises(LengthBudgetExceeded):
            build_partial_hankel(iid("1/3", 3), 2, 2)
        with pytest.raises(LengthBudgetExceeded):
            hankel_block(iid("1/3", 1), [(0,)], [(1,)])

    def test_iid_minors_vanish(self):
        t = iid("1/3", 4)
        M = build_partial_hankel(t, 2, 2).entries.tolist()
        for i in range(7):
            for j in range(7):
                for i2 in range(i + 1, 7):
                    for j2 in range(j + 1, 7):
                        assert M[i][j] * M[i2][j2] - M[i][j2] * M[i2][j] == 0

    def test_csv(self):
        csv = build_partial_hankel(iid("1/2", 2), 1, 1).to_csv().splitlines()
        assert csv[0] == "v\\w,□,0,1"
        assert csv[1] == "□,1,1/2,1/2"
        assert csv[2] == "0,1/2,1/4,1/4"

    @settings(max_examples=25)
    @given(st.integers(0, 10**6))
    def test_entries_match_oracle(self, seed):
        t = random_table(B, 4, seed)
        values = dict(t.items())
        h = build_partial_hankel(t, 2, 1)
        assert h.entries.tolist() == hankel_matrix(values, 2, 4, 2, 1)


class TestRank:
    def test_zero_matrix(self):
        t = DistributionTable(B, 2, [0] * 4)
        assert hankel_rank(t, 1, 1) == 0

    def test_iid_rank_one(self):
        assert hankel_rank(iid("1/3", 4), 2, 2) == 1

    def test_three_state_hmm_bound(self):
        t = hmm_to_realization(random_hmm(3, B, 11)).tabulate(5)
        assert hankel_rank(t, 2, 2) <= 3

    def test_report_pivots(self):
        t = hmm_to_realization(random_hmm(2, B, 3)).tabulate(4)
        rep = rank(build_partial_hankel(t, 1, 1))
        assert rep.rank == len(rep.pivot_rows) == len(rep.pivot_cols) == 2
        assert rep.pivot_rows == ((), (0,))
        d = rep.to_dict(B)
        assert d["mode"] == "rational" and d["pivot_rows"] == ["", "0"]

    def test_float_report_records_tolerance(self):
        t = iid("1/3", 2).convert(floating(1e-7))
        assert rank(build_partial_hankel(t, 1, 1)).to_dict(B)["tol"] == 1e-7


class TestDimension:
    def test_iid(self):
        assert dimension(iid("1/3", 4), 3) == 1

    def test_two_state_hmm(self):
        h = HmmParams(B, [["9/10", "1/10"], ["1/10", "9/10"]], [["4/5", "1/5"], ["1/5", "4/5"]],
                      ["1/2", "1/2"])
        t = hmm_to_realization(h).tabulate(4)
        M = hankel_matrix(dict(t.items()), 2, 4, 1, 1)
        assert dimension(t, 2) == gauss_rank(M) == 2

    def test_markov_chain(self):
        m = MarkovParams(B, ["1/2", "1/2"], [["9/10", "1/10"], ["1/5", "4/5"]])
        assert dimension(markov_to_table(m, 4), 2) == 2

    def test_budget(self):
        with pytest.raises(LengthBudgetExceeded):
            dimension(iid("1/2", 1), 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_rank_saturates_for_realization_tables(d, seed):
    t = random_realization(d, B, seed, gussf=True, nonnegative=False).tabulate(2 * d)
    assert hankel_rank(t, d - 1, d - 1) == hankel_rank(t, d, d) <= d


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2), st.integers(0, 2))
def test_rank_monotone(seed, N, M):
    t = random_table(B, 5, seed)
    if N + M + 1 <= 5:
        assert hankel_rank(t, N, M) <= hankel_rank(t, N + 1, M)
        assert hankel_rank(t, N, M) <= hankel_rank(t, N, M + 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6), st.integers(0, 1))
def test_shift_does_not_raise_rank(l, seed, a):
    t = hmm_to_realization(random_hmm(l, B, seed)).tabulate(5)
    assert hankel_rank(shift(t, a), 2, 2) <= hankel_rank(t, 2, 2)
