"""Alphabets, words, scalar arithmetic and distribution tables.

Words are plain tuples of letter indices into an :class:`Alphabet`; the
empty tuple is the empty word. Concatenation is tuple addition, so the
string ``wv`` is ``w + v``.

Two arithmetic modes are supported. Exact mode keeps every value as a
:class:`fractions.Fraction` inside ``dtype=object`` numpy arrays, so rank
and determinant tests are identities. Float mode uses ``float64`` arrays
and a single relative tolerance for every zero test.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import InvalidParameters, WordTooLong

Word = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Arithmetic:
    """Scalar mode shared by tables, Hankel matrices and realizations.

    Parameters
    ----------
    exact : bool
        ``True`` for rational arithmetic, ``False`` for floats.
    tol : float
        Relative tolerance for zero tests in float mode. Ignored when exact.
    """

    exact: bool = True
    tol: float = 1e-9

    @property
    def mode(self) -> str:
        return "rational" if self.exact else "float"

    @property
    def dtype(self):
        return object if self.exact else np.float64

    def scalar(self, value) -> Fraction | float:
        """Convert ``value`` (number or ``"num/den"``/decimal string)."""
        if isinstance(value, str):
            text = value.strip()
            try:
                q = Fraction(text)
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"not a rational or decimal number: {value!r}") from None
            return q if self.exact else float(q)
        if isinstance(value, bool):
            raise ValueError(f"not a number: {value!r}")
        if self.exact:
            if isinstance(value, Rational):
                return Fraction(value)
            if isinstance(value, Real):
                # Decimal reading of the float, not its binary expansion.
                return Fraction(repr(float(value)))
            raise ValueError(f"not a number: {value!r}")
        if isinstance(value, Real):
            return float(value)
        raise ValueError(f"not a number: {value!r}")

    def array(self, values) -> np.ndarray:
        """Numpy array of scalars in this mode (any nesting depth)."""
        if isinstance(values, np.ndarray) and values.dtype != object:
            if self.exact:
                if values.dtype.kind in "iu":
                    flat = [Fraction(int(v)) for v in values.ravel()]
                else:
                    flat = [self.scalar(float(v)) for v in values.ravel()]
                out = np.empty(values.shape, dtype=object)
                out.ravel()[:] = flat
                return out
            return values.astype(np.float64)
        arr = np.asarray(values, dtype=object)
        out = np.empty(arr.shape, dtype=self.dtype)
        if arr.size:
            out.ravel()[:] = [self.scalar(v) for v in arr.ravel()]
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.exact:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = Fraction(1) if self.exact else 1.0
        return out

    def ones(self, n: int) -> np.ndarray:
        return self.array([1] * n)

    def is_zero(self, x, scale=1.0) -> bool:
        """Zero test; in float mode ``|x| <= tol * scale``."""
        if self.exact:
            return x == 0
        return abs(float(x)) <= self.tol * float(scale)

    def equal(self, a, b, scale=1.0) -> bool:
        return self.is_zero(a - b, scale)

    def describe(self) -> dict:
        out = {"mode": self.mode}
        if not self.exact:
            out["tol"] = self.tol
        return out


RATIONAL = Arithmetic(exact=True)


def floating(tol: float = 1e-9) -> Arithmetic:
    return Arithmetic(exact=False, tol=tol)


def format_scalar(x) -> str:
    """``"num/den"`` (or ``"num"``) for rationals, ``repr`` for floats."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def max_abs(values) -> float:
    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0
    return float(max(abs(float(v)) for v in arr.ravel()))


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free symbol labels; order fixes letter precedence."""

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise InvalidParameters("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise InvalidParameters(f"alphabet symbols are not distinct: {symbols}")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def of_size(cls, k: int) -> "Alphabet":
        return cls(tuple(str(i) for i in range(k)))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(range(len(self.symbols)))

    def index(self, symbol) -> int:
        try:
            return self.symbols.index(str(symbol))
        except ValueError:
            raise KeyError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    @property
    def compact(self) -> bool:
        """Whether every symbol is one character, so words print unseparated."""
        return all(len(s) == 1 for s in self.symbols) and " " not in self.symbols

    def format_word(self, word: Word) -> str:
        sep = "" if self.compact else " "
        return sep.join(self.symbols[a] for a in word)

    def parse_word(self, text: str) -> Word:
        if self.compact:
            tokens = list(text)
        else:
            tokens = text.split()
        return tuple(self.index(t) for t in tokens)


def words_of_length(alphabet: Alphabet, n: int) -> list[Word]:
    """All words of length ``n`` in lexicographic order."""
    return list(itertools.product(range(len(alphabet)), repeat=n))


def shortlex_words(alphabet: Alphabet, max_len: int) -> list[Word]:
    """Every word of length at most ``max_len``, by length then lexicographically."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    out: list[Word] = []
    for k in range(max_len + 1):
        out.extend(words_of_length(alphabet, k))
    return out


def shortlex_key(word: Word):
    return (len(word), tuple(word))


def word_index(word: Word, base: int) -> int:
    """Lexicographic position of ``word`` among words of its length.

    ``base`` is the alphabet size.
    """
    idx = 0
    for a in word:
        idx = idx * base + a
    return idx


class TableKind(str, enum.Enum):
    STOCHASTIC = "stochastic"
    UNCONSTRAINED = "unconstrained"
    RAW = "raw"


class Classification(str, enum.Enum):
    SSF = "SSF-consistent"
    USSF = "USSF-consistent"
    GUSSF = "GUSSF-only"
    INCONSISTENT = "inconsistent"


class DistributionTable:
    """Complete value table ``p(v)`` for all ``v`` of length ``n``.

    Values of shorter words are defined by suffix marginalization,
    ``p(u) = sum_s p(us)``. Instances are immutable.

    Parameters
    ----------
    alphabet : Alphabet
    n : int
        Word length of the stored values.
    values : sequence or mapping
        Either ``|alphabet|**n`` values in lexicographic word order, or a
        mapping from words (tuples or strings) to values.
    kind : TableKind or str
        ``stochastic`` requires non-negative values summing to one,
        ``unconstrained`` only non-negativity, ``raw`` nothing.
    arith : Arithmetic
    """

    def __init__(self, alphabet: Alphabet, n: int, values, kind="raw",
                 arith: Arithmetic = RATIONAL):
        if n < 0:
            raise ValueError("table length n must be non-negative")
        self.alphabet = alphabet
        self.n = int(n)
        self.kind = TableKind(kind)
        self.arith = arith
        size = len(alphabet) ** self.n
        if isinstance(values, Mapping):
            slots: list = [None] * size
            for key, val in values.items():
                word = alphabet.parse_word(key) if isinstance(key, str) else tuple(key)
                if len(word) != self.n:
                    raise InvalidParameters(
                        f"word {alphabet.format_word(word)!r} has length {len(word)}, expected {self.n}")
                i = word_index(word, len(alphabet))
                if slots[i] is not None:
                    raise InvalidParameters(f"word {alphabet.format_word(word)!r} appears twice")
                slots[i] = val
            missing = [i for i, v in enumerate(slots) if v is None]
            if missing:
                w = words_of_length(alphabet, self.n)[missing[0]]
                raise InvalidParameters(
                    f"{len(missing)} words missing, first {alphabet.format_word(w)!r}")
            values = slots
        arr = arith.array(values).reshape(-1)
        if arr.shape[0] != size:
            raise InvalidParameters(f"expected {size} values for n={self.n}, got {arr.shape[0]}")
        arr.flags.writeable = False
        self.values = arr
        self._levels: dict[int, np.ndarray] = {self.n: arr}
        self._check_kind()

    def _check_kind(self):
        if self.kind is TableKind.RAW:
            return
        scale = max(max_abs(self.values), 1.0)
        for v in self.values:
            if v < 0 and not self.arith.is_zero(v, scale):
                raise InvalidParameters(f"{self.kind.value} table has a negative value {v}")
        if self.kind is TableKind.STOCHASTIC and not self.arith.equal(self.total, 1):
            raise InvalidParameters(f"stochastic table sums to {self.total}, not 1")

    @property
    def total(self):
        return self.marginals(0)[0]

    def marginals(self, k: int) -> np.ndarray:
        """Values ``p(u)`` for all ``|u| = k`` in lexicographic order."""
        if k > self.n:
            raise WordTooLong(f"word length {k} exceeds table length {self.n}")
        if k not in self._levels:
            block = len(self.alphabet) ** (self.n - k)
            lev = self.values.reshape(-1, block).sum(axis=1)
            if self.arith.exact:
                lev = np.asarray(lev, dtype=object)
            lev.flags.writeable = False
            self._levels[k] = lev
        return self._levels[k]

    def marginal(self, u: Word):
        """``p(u)``; the stored value when ``|u| = n``."""
        if len(u) > self.n:
            raise WordTooLong(f"word of length {len(u)} exceeds table length {self.n}")
        return self.marginals(len(u))[word_index(u, len(self.alphabet))]

    __getitem__ = marginal

    def words(self) -> list[Word]:
        return words_of_length(self.alphabet, self.n)

    def items(self) -> Iterator[tuple[Word, object]]:
        return zip(self.words(), self.values)

    def truncate(self, m: int) -> "DistributionTable":
        """Table over words of length ``m <= n`` holding the marginals."""
        return DistributionTable(self.alphabet, m, self.marginals(m), kind=self.kind,
                                 arith=self.arith)

    def convert(self, arith: Arithmetic) -> "DistributionTable":
        return DistributionTable(self.alphabet, self.n, convert_array(self.values, arith),
                                 kind=TableKind.RAW, arith=arith)

    def with_kind(self, kind) -> "DistributionTable":
        return DistributionTable(self.alphabet, self.n, self.values, kind=kind, arith=self.arith)

    def allclose(self, other: "DistributionTable") -> bool:
        """Exact equality in rational mode, tolerance equality otherwise."""
        if self.alphabet != other.alphabet or self.n != other.n:
            return False
        arith = self.arith if not self.arith.exact else other.arith
        scale = max(max_abs(self.values), max_abs(other.values), 1.0)
        return all(arith.equal(a, b, scale) for a, b in zip(self.values, other.values))

    def __eq__(self, other):
        if not isinstance(other, DistributionTable):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.n == other.n
                and all(a == b for a, b in zip(self.values, other.values)))

    __hash__ = None

    def __repr__(self):
        return (f"DistributionTable(alphabet={list(self.alphabet.symbols)}, n={self.n}, "
                f"kind={self.kind.value}, mode={self.arith.mode})")


def convert_array(values, arith: Arithmetic) -> np.ndarray:
    arr = np.asarray(values)
    if arith.exact:
        return arith.array(arr) if arr.dtype != object else arr
    out = np.empty(arr.shape, dtype=np.float64)
    if arr.size:
        out.ravel()[:] = [float(v) for v in arr.ravel()]
    return out


def infer_kind(values, arith: Arithmetic) -> TableKind:
    """Strongest kind the values satisfy."""
    scale = max(max_abs(values), 1.0)
    if any(v < 0 and not arith.is_zero(v, scale) for v in np.asarray(values).ravel()):
        return TableKind.RAW
    total = sum(np.asarray(values).ravel(), Fraction(0) if arith.exact else 0.0)
    return TableKind.STOCHASTIC if arith.equal(total, 1) else TableKind.UNCONSTRAINED


def marginal(table: DistributionTable, u: Word):
    return table.marginal(u)


def classify(table: DistributionTable,
             observed: Mapping[Word, object] | None = None) -> Classification:
    """Place a table among SSF, USSF and GUSSF.

    Marginal consistency holds by construction for a single table, since
    shorter-word values are defined by summing completions. It can only
    fail against externally ``observed`` shorter-word values, in which
    case the table is reported ``INCONSISTENT``.
    """
    arith = table.arith
    if observed:
        for word, val in observed.items():
            if not arith.equal(table.marginal(tuple(word)), arith.scalar(val)):
                return Classification.INCONSISTENT
    if infer_kind(table.values, arith) is TableKind.RAW:
        return Classification.GUSSF
    if arith.equal(table.total, 1):
        return Classification.SSF
    return Classification.USSF


def iter_words(alphabet: Alphabet, lengths: Iterable[int]) -> Iterator[Word]:
    for k in lengths:
        yield from itertools.product(range(len(alphabet)), repeat=k)


def as_word(alphabet: Alphabet, word) -> Word:
    if isinstance(word, str):
        return alphabet.parse_word(word)
    return tuple(int(a) for a in word)


__all__ = [
    "Alphabet", "Arithmetic", "Classification", "DistributionTable", "RATIONAL",
    "TableKind", "Word", "as_word", "classify", "convert_array", "floating",
    "format_scalar", "infer_kind", "marginal", "max_abs", "shortlex_key",
    "shortlex_words", "word_index", "words_of_length",
]

