from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finitary.core import Alphabet, Classification, DistributionTable, classify, shortlex_words
from finitary.errors import EmptyTable, InvalidParameters, PathBudgetExceeded
from finitary.hankel import hankel_rank
from finitary.invariants import check_markov_invariants
from finitary.models import (HmmParams, MarkovParams, TraceModel, hmm_brute_force,
                             hmm_to_realization, markov_to_table, random_hmm, random_markov,
                             random_realization, random_table, random_trace, shift,
                             trace_components, trace_eval, trace_to_realization)
from finitary.realization import QuasiRealization

from oracles import all_words, suffix_sum, trace_product

B = Alphabet(("0", "1"))
T3 = Alphabet(("a", "b", "c"))


def path_sum(h, word):
    """Enumerate every state path explicitly; no sharing, no scaling."""
    if not word:
        return sum(h.pi)
    total = Fraction(0)
    for path in np.ndindex(*([h.l] * len(word))):
        p = h.pi[path[0]] * h.E[path[0], word[0]]
        for i in range(1, len(word)):
            p *= h.A[path[i - 1], path[i]] * h.E[path[i], word[i]]
        total += p
    return total


class TestHmm:
    def test_single_state_is_iid(self):
        h = HmmParams(B, [[1]], [["1/3", "2/3"]], [1])
        r = hmm_to_realization(h)
        assert r.T.tolist() == [[[Fraction(1, 3)]], [[Fraction(2, 3)]]]
        assert hmm_brute_force(h, (0, 1, 1)) == Fraction(1, 3) * Fraction(2, 3) ** 2

    def test_deterministic_cycle(self):
        h = HmmParams(B, [[0, 1], [1, 0]], [[1, 0], [0, 1]], [1, 0])
        t = hmm_to_realization(h).tabulate(5)
        for w, v in t.items():
            assert v == (1 if w == (0, 1, 0, 1, 0) else 0)

    def test_empty_word(self):
        h = random_hmm(3, B, 2)
        assert hmm_brute_force(h, ()) == 1 == hmm_to_realization(h)(())
        u = h.with_pi(["1/2", "1/3", "1/2"])
        assert hmm_brute_force(u, ()) == Fraction(4, 3)

    def test_path_budget(self):
        with pytest.raises(PathBudgetExceeded):
            hmm_brute_force(random_hmm(3, B, 0), (0,) * 10, max_paths=1000)

    def test_validation(self):
        with pytest.raises(InvalidParameters, match="row 0 of A"):
            HmmParams(B, [["1/2", "1/3"], [0, 1]], [[1, 0], [0, 1]], [1, 0])
        with pytest.raises(InvalidParameters, match="negative"):
            HmmParams(B, [[2, -1], [0, 1]], [[1, 0], [0, 1]], [1, 0])
        with pytest.raises(InvalidParameters, match="pi sums"):
            HmmParams(B, [[1, 0], [0, 1]], [[1, 0], [0, 1]], [1, 1])
        HmmParams(B, [[1, 0], [0, 1]], [[1, 0], [0, 1]], [1, 1], constrained=False)

    def test_generator_is_deterministic_and_exact(self):
        a, b = random_hmm(3, T3, 42), random_hmm(3, T3, 42)
        assert (a.A == b.A).all() and (a.E == b.E).all() and (a.pi == b.pi).all()
        assert all(sum(row) == 1 for row in a.A) and all(sum(row) == 1 for row in a.E)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 10**6))
    def test_matches_explicit_paths(self, l, seed):
        h = random_hmm(l, B, seed)
        r = hmm_to_realization(h)
        for w in shortlex_words(B, 6):
            assert r(w) == hmm_brute_force(h, w)
        for w in shortlex_words(B, 3):
            assert r(w) == path_sum(h, w)

    def test_table_marginals_match_path_sums(self):
        h = random_hmm(2, B, 8)
        t = hmm_to_realization(h).tabulate(4)
        assert t.marginal((0, 1)) == hmm_brute_force(h, (0, 1))
        values = dict(t.items())
        assert suffix_sum(values, 2, 4, (0, 1)) == hmm_brute_force(h, (0, 1))

    @settings(max_examples=15, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 10**6))
    def test_rank_bounded_by_states(self, l, seed):
        t = hmm_to_realization(random_hmm(l, B, seed)).tabulate(6)
        assert all(hankel_rank(t, N, 6 - N) <= l for N in range(7))


class TestMarkov:
    def test_identical_rows_give_iid(self):
        m = MarkovParams(B, ["1/3", "2/3"], [["1/3", "2/3"], ["1/3", "2/3"]])
        t = markov_to_table(m, 3)
        for w, v in t.items():
            assert v == Fraction(1, 3) ** w.count(0) * Fraction(2, 3) ** w.count(1)

    def test_length_one_is_pi(self):
        m = random_markov(T3, 1)
        assert list(markov_to_table(m, 1).values) == list(m.pi)

    def test_chain_rule(self):
        m = random_markov(T3, 5)
        t = markov_to_table(m, 3)
        for w, v in t.items():
            assert v == m.pi[w[0]] * m.M[w[0], w[1]] * m.M[w[1], w[2]]

    def test_validation(self):
        with pytest.raises(InvalidParameters):
            MarkovParams(B, [0, 1], [[1, 0], [0, 1]])
        with pytest.raises(InvalidParameters):
            MarkovParams(B, ["1/2", "1/2"], [[1, 1], [0, 1]])

    def test_random_chain_passes_invariants(self):
        assert check_markov_invariants(markov_to_table(random_markov(B, 3), 5)).passed


class TestShift:
    def test_iid(self):
        q = Fraction(1, 3)
        h = HmmParams(B, [[1]], [[q, 1 - q]], [1])
        t = hmm_to_realization(h).tabulate(4)
        s = shift(t, 0)
        assert s.n == 3
        assert list(s.values) == [q * v for v in hmm_to_realization(h).tabulate(3).values]
        assert s.kind.value == "unconstrained"

    def test_markov_shift_stays_markov(self):
        t = markov_to_table(random_markov(T3, 9), 6)
        for a in T3:
            assert check_markov_invariants(shift(t, a)).passed

    def test_empty(self):
        with pytest.raises(EmptyTable):
            shift(DistributionTable(B, 0, [1]), 0)

    def test_values(self):
        t = random_table(B, 3, 4)
        s = shift(t, 1)
        assert all(s[w] == t[(1,) + w] for w in all_words(2, 2))


class TestTrace:
    def test_order_one(self):
        t = TraceModel(B, [[[2]], [[3]]])
        r = trace_to_realization(t)
        assert r.d == 1 and r((0, 1, 1)) == trace_eval(t, (0, 1, 1)) == 18

    def test_empty_word_is_order(self):
        assert trace_eval(random_trace(3, B, 0), ()) == 3

    def test_cyclic(self):
        t = random_trace(3, B, 6)
        assert trace_eval(t, (0, 1)) == trace_eval(t, (1, 0))
        assert trace_eval(t, (0, 0, 1)) == trace_eval(t, (0, 1, 0)) == trace_eval(t, (1, 0, 0))

    def test_validation(self):
        with pytest.raises(InvalidParameters):
            TraceModel(B, [[[1, 2]], [[1, 2]]])

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10**6))
    def test_realization_matches_trace(self, seed):
        t = random_trace(2, B, seed)
        r = trace_to_realization(t)
        X = t.X.tolist()
        assert r.d == 4
        for w in shortlex_words(B, 5):
            assert r(w) == trace_eval(t, w) == trace_product(X, w)

    @settings(max_examples=10, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 10**6))
    def test_components_sum_to_trace(self, r, seed):
        t = random_trace(r, B, seed)
        parts = trace_components(t)
        assert len(parts) == r
        for w in shortlex_words(B, 4):
            assert sum(p(w) for p in parts) == trace_eval(t, w)


class TestGenerators:
    def test_same_seed_same_realization(self):
        a, b = random_realization(3, B, 5), random_realization(3, B, 5)
        assert (a.T == b.T).all() and (a.x == b.x).all() and (a.y == b.y).all()

    def test_non_gussf_option(self):
        r = random_realization(2, B, 5, gussf=False)
        assert not r.gussf

    def test_random_table_is_stochastic(self):
        t = random_table(T3, 3, 7)
        assert t.total == 1 and all(v > 0 for v in t.values)
        assert classify(t) is Classification.SSF

    def test_negative_parameters_give_gussf_only_tables(self):
        r = QuasiRealization(B, [[[2]], [[-1]]], [1], [1], gussf=True)
        assert classify(r.tabulate(2)) is Classification.GUSSF


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_sum_bound(s1, s2):
    p = random_realization(1, B, s1).tabulate(4)
    q = random_realization(2, B, s2).tabulate(4)
    total = DistributionTable(B, 4, p.values + q.values)
    for N in range(3):
        M = 4 - N
        assert hankel_rank(total, N, M) <= hankel_rank(p, N, M) + hankel_rank(q, N, M)
