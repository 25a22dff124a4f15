"""Hidden Markov models, Markov chains and trace models.

Each family converts to a :class:`QuasiRealization` or directly to a
table, and each has a seeded random generator. ``hmm_brute_force`` sums
over hidden state paths and serves as an oracle independent of the
matrix formulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (Alphabet, Arithmetic, DistributionTable, RATIONAL, TableKind, Word,
                   convert_array, infer_kind, max_abs)
from .errors import EmptyTable, InvalidParameters, PathBudgetExceeded
from .realization import QuasiRealization, evaluate, is_gussf, realization_to_table


def _check_stochastic_rows(name: str, M: np.ndarray, arith: Arithmetic):
    scale = max(max_abs(M), 1.0)
    for i, row in enumerate(M):
        for v in row:
            if v < 0 and not arith.is_zero(v, scale):
                raise InvalidParameters(f"{name} has a negative entry {v} in row {i}")
        if not arith.equal(sum(row), 1, scale):
            raise InvalidParameters(f"row {i} of {name} sums to {sum(row)}, not 1")


@dataclass(frozen=True, eq=False)
class HmmParams:
    """Hidden Markov model with ``l`` states.

    ``A[i, j]`` is the probability of moving from state ``i`` to ``j``,
    ``E[i, a]`` of emitting letter ``a`` in state ``i``. With
    ``constrained=False`` the initial vector ``pi`` only has to be
    non-negative.
    """

    alphabet: Alphabet
    A: np.ndarray
    E: np.ndarray
    pi: np.ndarray
    arith: Arithmetic = RATIONAL
    constrained: bool = True

    def __post_init__(self):
        A = self.arith.array(self.A)
        E = self.arith.array(self.E)
        pi = self.arith.array(self.pi).reshape(-1)
        l, k = pi.shape[0], len(self.alphabet)
        if l < 1:
            raise InvalidParameters("an HMM needs at least one hidden state")
        if A.shape != (l, l):
            raise InvalidParameters(f"A has shape {A.shape}, expected {(l, l)}")
        if E.shape != (l, k):
            raise InvalidParameters(f"E has shape {E.shape}, expected {(l, k)}")
        _check_stochastic_rows("A", A, self.arith)
        _check_stochastic_rows("E", E, self.arith)
        if any(v < 0 and not self.arith.is_zero(v) for v in pi):
            raise InvalidParameters("pi has a negative entry")
        if self.constrained and not self.arith.equal(sum(pi), 1):
            raise InvalidParameters(f"pi sums to {sum(pi)}, not 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "pi", pi)

    @property
    def l(self) -> int:  # noqa: E743
        return self.pi.shape[0]

    def convert(self, arith: Arithmetic) -> "HmmParams":
        return HmmParams(self.alphabet, convert_array(self.A, arith), convert_array(self.E, arith),
                         convert_array(self.pi, arith), arith, self.constrained)

    def with_pi(self, pi) -> "HmmParams":
        """Same chain started from another (possibly unnormalized) vector."""
        return HmmParams(self.alphabet, self.A, self.E, pi, self.arith, constrained=False)


@dataclass(frozen=True, eq=False)
class MarkovParams:
    """First-order chain on the alphabet: ``p(a_1...a_n) = pi[a_1] prod M[a_i, a_i+1]``."""

    alphabet: Alphabet
    pi: np.ndarray
    M: np.ndarray
    arith: Arithmetic = RATIONAL

    def __post_init__(self):
        k = len(self.alphabet)
        pi = self.arith.array(self.pi).reshape(-1)
        M = self.arith.array(self.M)
        if pi.shape != (k,) or M.shape != (k, k):
            raise InvalidParameters(f"expected pi of length {k} and M of shape {(k, k)}")
        if any(v <= 0 for v in pi):
            raise InvalidParameters("pi must be strictly positive")
        _check_stochastic_rows("M", M, self.arith)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "M", M)

    def convert(self, arith: Arithmetic) -> "MarkovParams":
        return MarkovParams(self.alphabet, convert_array(self.pi, arith),
                            convert_array(self.M, arith), arith)


@dataclass(frozen=True, eq=False)
class TraceModel:
    """``p(a_1...a_n) = tr(X[a_n] ... X[a_1])`` for ``r x r`` matrices ``X``."""

    alphabet: Alphabet
    X: np.ndarray
    arith: Arithmetic = RATIONAL

    def __post_init__(self):
        X = self.arith.array(self.X)
        k = len(self.alphabet)
        if X.ndim != 3 or X.shape[0] != k or X.shape[1] != X.shape[2]:
            raise InvalidParameters(f"X must have shape ({k}, r, r), got {X.shape}")
        object.__setattr__(self, "X", X)

    @property
    def r(self) -> int:
        return self.X.shape[1]

    def convert(self, arith: Arithmetic) -> "TraceModel":
        return TraceModel(self.alphabet, convert_array(self.X, arith), arith)


def hmm_to_realization(h: HmmParams) -> QuasiRealization:
    """``T_a = A^T diag(E[:, a])``, ``x = pi``, ``y = (1, ..., 1)``."""
    T = np.stack([h.A.T * h.E[:, a] for a in range(len(h.alphabet))])
    return QuasiRealization(h.alphabet, T, h.pi, h.arith.ones(h.l), arith=h.arith, gussf=True)


def hmm_brute_force(h: HmmParams, v: Word, max_paths: int = 10**6):
    """Sum of ``pi[s1] E[s1,a1] A[s1,s2] E[s2,a2] ... E[sn,an]`` over state paths.

    The emission happens in the current state before the transition, and
    no transition follows the last letter. Paths sharing a prefix share
    the partial product.
    """
    v = tuple(v)
    if h.l ** len(v) > max_paths:
        raise PathBudgetExceeded(f"{h.l}**{len(v)} state paths exceed the budget {max_paths}")
    if h.arith.exact:
        # Scale to integers: every path uses one pi entry, len(v) emissions
        # and len(v) - 1 transitions, so the common denominator is shared.
        (pi, dp), (A, da), (E, de) = (_integer_scaled(m) for m in (h.pi, h.A, h.E))
        zero = 0
    else:
        pi, A, E = h.pi.tolist(), h.A.tolist(), h.E.tolist()
        zero = 0.0
    if not v:
        total = sum(pi, zero)
        return Fraction(total, dp) if h.arith.exact else total
    l, last = h.l, len(v) - 1

    def walk(state, weight, depth):
        weight = weight * E[state][v[depth]]
        if depth == last:
            return weight
        total = zero
        for nxt in range(l):
            if A[state][nxt]:
                total += walk(nxt, weight * A[state][nxt], depth + 1)
        return total

    total = sum((walk(s, pi[s], 0) for s in range(l) if pi[s]), zero)
    if h.arith.exact:
        return Fraction(total, dp * de ** len(v) * da ** last)
    return total


def _integer_scaled(M: np.ndarray):
    """Integer entries (nested lists) and the common denominator."""
    den = math.lcm(*(Fraction(x).denominator for x in M.ravel()))
    return (np.vectorize(lambda x: int(x * den), otypes=[object])(M).tolist(), den)


def markov_to_table(m: MarkovParams, n: int) -> DistributionTable:
    if n < 1:
        raise ValueError("a Markov table needs n >= 1")
    k = len(m.alphabet)
    values = m.pi.copy()
    for _ in range(n - 1):
        last = np.arange(values.shape[0]) % k
        values = (values[:, None] * m.M[last]).reshape(-1)
    kind = TableKind.STOCHASTIC if m.arith.equal(sum(m.pi), 1) else TableKind.UNCONSTRAINED
    return DistributionTable(m.alphabet, n, values, kind=kind, arith=m.arith)


def shift(table: DistributionTable, a: int) -> DistributionTable:
    """The table of ``v -> p(av)`` over words of length ``n - 1``, not renormalized."""
    if table.n == 0:
        raise EmptyTable("cannot shift a table of the empty word")
    block = len(table.alphabet) ** (table.n - 1)
    values = table.values[a * block:(a + 1) * block]
    kind = TableKind.RAW if infer_kind(values, table.arith) is TableKind.RAW \
        else TableKind.UNCONSTRAINED
    return DistributionTable(table.alphabet, table.n - 1, values, kind=kind, arith=table.arith)


def trace_eval(t: TraceModel, v: Word):
    P = t.arith.eye(t.r)
    for a in v:
        P = t.X[a] @ P
    return np.trace(P)


def trace_to_realization(t: TraceModel) -> QuasiRealization:
    """Dimension ``r**2`` realization acting on row-major ``vec(Z)`` by ``Z -> X_a Z``."""
    I = t.arith.eye(t.r)
    T = np.stack([np.kron(Xa, I) for Xa in t.X])
    vec = I.reshape(-1)
    r = QuasiRealization(t.alphabet, T, vec, vec, arith=t.arith)
    if is_gussf(r):
        r = QuasiRealization(t.alphabet, T, vec, vec, arith=t.arith, gussf=True)
    return r


def trace_components(t: TraceModel) -> list[QuasiRealization]:
    """The ``r`` diagonal string functions ``e_i^T X_{a_n}...X_{a_1} e_i``; they sum to the trace."""
    I = t.arith.eye(t.r)
    return [QuasiRealization(t.alphabet, t.X, I[i], I[i], arith=t.arith) for i in range(t.r)]


# Seeded generators. Parameters are built from small integers so that
# exact arithmetic stays cheap.

def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _stochastic(rng, rows: int, cols: int, low: int = 1, high: int = 9) -> np.ndarray:
    ints = rng.integers(low, high + 1, size=(rows, cols))
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        s = int(ints[i].sum())
        out[i] = [Fraction(int(v), s) for v in ints[i]]
    return out


def _finish(arith: Arithmetic, *arrays):
    return tuple(convert_array(a, arith) for a in arrays)


def random_hmm(l: int, alphabet: Alphabet, seed, arith: Arithmetic = RATIONAL) -> HmmParams:  # noqa: E741
    if l < 1:
        raise ValueError("l must be at least 1")
    rng = _rng(seed)
    A = _stochastic(rng, l, l)
    E = _stochastic(rng, l, len(alphabet))
    pi = _stochastic(rng, 1, l)[0]
    return HmmParams(alphabet, *_finish(arith, A, E, pi), arith=arith)


def random_markov(alphabet: Alphabet, seed, arith: Arithmetic = RATIONAL) -> MarkovParams:
    rng = _rng(seed)
    k = len(alphabet)
    pi = _stochastic(rng, 1, k)[0]
    M = _stochastic(rng, k, k)
    return MarkovParams(alphabet, *_finish(arith, pi, M), arith=arith)


def random_realization(d: int, alphabet: Alphabet, seed, gussf: bool = True,
                       nonnegative: bool = True,
                       arith: Arithmetic = RATIONAL) -> QuasiRealization:
    """Random ``d``-dimensional quasi-realization.

    With ``gussf`` a positive ``y`` is sampled and column ``j`` of every
    ``T_a`` is rescaled by ``y_j / c_j`` where ``c = y^T sum_a T_a``;
    afterwards ``y^T sum_a T_a = y^T`` holds exactly. ``x`` is scaled so
    that ``y^T x = 1``, making the tables sum to one.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    rng = _rng(seed)
    k = len(alphabet)
    low = 0 if nonnegative else -5
    while True:
        ints = rng.integers(low, 6, size=(k, d, d))
        T = np.empty(ints.shape, dtype=object)
        T.ravel()[:] = [Fraction(int(v)) for v in ints.ravel()]
        x = np.array([Fraction(int(v)) for v in rng.integers(1, 6, size=d)], dtype=object)
        y = np.array([Fraction(int(v)) for v in rng.integers(1, 6, size=d)], dtype=object)
        if gussf:
            c = y @ T.sum(axis=0)
            if any(cj == 0 for cj in c):
                continue
            T = T * np.array([yj / cj for yj, cj in zip(y, c)], dtype=object)
        yx = y @ x
        if yx == 0:
            continue
        x = x / yx
        break
    T, x, y = _finish(arith, T, x, y)
    return QuasiRealization(alphabet, T, x, y, arith=arith, gussf=gussf)


def random_trace(r: int, alphabet: Alphabet, seed, arith: Arithmetic = RATIONAL) -> TraceModel:
    rng = _rng(seed)
    ints = rng.integers(0, 5, size=(len(alphabet), r, r))
    X = np.empty(ints.shape, dtype=object)
    X.ravel()[:] = [Fraction(int(v), 4) for v in ints.ravel()]
    return TraceModel(alphabet, convert_array(X, arith), arith)


def random_table(alphabet: Alphabet, n: int, seed, arith: Arithmetic = RATIONAL,
                 max_denominator: int = 1000) -> DistributionTable:
    """Stochastic table drawn from a flat Dirichlet distribution.

    In exact mode the draws are rounded to nearby rationals and
    renormalized, so the values sum to one exactly.
    """
    rng = _rng(seed)
    size = len(alphabet) ** n
    draw = rng.dirichlet(np.ones(size))
    if arith.exact:
        q = [max(Fraction(float(v)).limit_denominator(max_denominator),
                 Fraction(1, max_denominator)) for v in draw]
        s = sum(q)
        values = [v / s for v in q]
    else:
        values = draw / draw.sum()
    return DistributionTable(alphabet, n, values, kind=TableKind.STOCHASTIC, arith=arith)


__all__ = [
    "HmmParams", "MarkovParams", "TraceModel", "evaluate", "hmm_brute_force",
    "hmm_to_realization", "markov_to_table", "random_hmm", "random_markov",
    "random_realization", "random_table", "random_trace", "realization_to_table", "shift",
    "trace_components", "trace_eval", "trace_to_realization",
]
