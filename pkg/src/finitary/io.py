"""JSON reading and writing for tables, realizations and model parameters.

Scalars are written as strings: ``"num/den"`` in exact mode and the
shortest round-tripping decimal in float mode. On input both strings and
JSON numbers are accepted. Malformed input raises :class:`InputError`
naming the source and the offending field.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile

from .core import Alphabet, Arithmetic, DistributionTable, RATIONAL, format_scalar
from .errors import FinitaryError, InputError
from .models import HmmParams, MarkovParams, TraceModel
from .realization import QuasiRealization


def read_json(path: str | None):
    """Parse JSON from ``path`` or from stdin when ``path`` is ``None`` or ``"-"``."""
    source = "<stdin>" if path in (None, "-") else path
    try:
        if source == "<stdin>":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), source) from None
    try:
        return json.loads(text), source
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}",
                         source) from None


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_text(text: str, path: str | None):
    """Write to ``path`` atomically, or to stdout when ``path`` is ``None``."""
    if path is None:
        sys.stdout.write(text)
        return
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _Reader:
    """Field access with error messages that carry the JSON path."""

    def __init__(self, data, source: str, arith: Arithmetic):
        self.data = data
        self.source = source
        self.arith = arith

    def fail(self, message, field=""):
        raise InputError(message, self.source, field)

    def get(self, key, kind=None):
        if not isinstance(self.data, dict):
            self.fail("expected a JSON object")
        if key not in self.data:
            self.fail("missing field", key)
        value = self.data[key]
        if kind is not None and not isinstance(value, kind):
            self.fail(f"expected {getattr(kind, '__name__', kind)}", key)
        return value

    def alphabet(self) -> Alphabet:
        symbols = self.get("alphabet", list)
        try:
            return Alphabet(tuple(symbols))
        except FinitaryError as exc:
            self.fail(str(exc), "alphabet")

    def scalar(self, value, field):
        if isinstance(value, bool) or not isinstance(value, (int, float, str)):
            self.fail("expected a number or a 'num/den' string", field)
        try:
            return self.arith.scalar(value)
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(str(exc), field)

    def vector(self, value, field, length=None):
        if not isinstance(value, list):
            self.fail("expected a list", field)
        if length is not None and len(value) != length:
            self.fail(f"expected {length} entries, got {len(value)}", field)
        return self.arith.array([self.scalar(v, f"{field}[{i}]") for i, v in enumerate(value)])

    def matrix(self, value, field, rows=None, cols=None):
        if not isinstance(value, list):
            self.fail("expected a list of rows", field)
        if rows is not None and len(value) != rows:
            self.fail(f"expected {rows} rows, got {len(value)}", field)
        out = [self.vector(r, f"{field}[{i}]", cols) for i, r in enumerate(value)]
        if out and cols is None and len({len(r) for r in out}) > 1:
            self.fail("rows have different lengths", field)
        width = len(out[0]) if out else 0
        arr = self.arith.zeros((len(out), width))
        for i, r in enumerate(out):
            arr[i] = r
        return arr

    def integer(self, key, minimum=0):
        value = self.get(key)
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            self.fail(f"expected an integer >= {minimum}", key)
        return value


def _vec(values) -> list:
    return [format_scalar(v) for v in values]


def _mat(values) -> list:
    return [_vec(r) for r in values]


def table_to_json(table: DistributionTable) -> dict:
    fmt = table.alphabet.format_word
    return {
        "alphabet": list(table.alphabet.symbols),
        "n": table.n,
        "kind": table.kind.value,
        "mode": table.arith.mode,
        "values": {fmt(w): format_scalar(v) for w, v in table.items()},
    }


def table_from_json(data, arith: Arithmetic = RATIONAL, source="<input>") -> DistributionTable:
    rd = _Reader(data, source, arith)
    alphabet = rd.alphabet()
    n = rd.integer("n")
    kind = data.get("kind", "raw")
    if kind not in ("stochastic", "unconstrained", "raw"):
        rd.fail("expected stochastic, unconstrained or raw", "kind")
    values = rd.get("values", dict)
    parsed = {}
    for key, val in values.items():
        field = f"values.{key}"
        try:
            word = alphabet.parse_word(key)
        except KeyError as exc:
            rd.fail(str(exc.args[0]), field)
        if len(word) != n:
            rd.fail(f"word has length {len(word)}, expected {n}", field)
        parsed[word] = rd.scalar(val, field)
    try:
        return DistributionTable(alphabet, n, parsed, kind=kind, arith=arith)
    except FinitaryError as exc:
        rd.fail(str(exc), "values")


def realization_to_json(r: QuasiRealization) -> dict:
    sym = r.alphabet.symbols
    return {
        "model": "realization",
        "alphabet": list(sym),
        "d": r.d,
        "T": {sym[a]: _mat(r.T[a]) for a in r.alphabet},
        "x": _vec(r.x),
        "y": _vec(r.y),
        "gussf": r.gussf,
        "mode": r.arith.mode,
    }


def realization_from_json(data, arith: Arithmetic = RATIONAL, source="<input>") -> QuasiRealization:
    rd = _Reader(data, source, arith)
    alphabet = rd.alphabet()
    d = rd.integer("d")
    T_in = rd.get("T", dict)
    T = arith.zeros((len(alphabet), d, d))
    for sym in alphabet.symbols:
        if sym not in T_in:
            rd.fail("missing matrix for letter", f"T.{sym}")
        T[alphabet.index(sym)] = rd.matrix(T_in[sym], f"T.{sym}", d, d)
    x = rd.vector(rd.get("x"), "x", d)
    y = rd.vector(rd.get("y"), "y", d)
    gussf = data.get("gussf", False)
    if not isinstance(gussf, bool):
        rd.fail("expected true or false", "gussf")
    try:
        return QuasiRealization(alphabet, T, x, y, arith=arith, gussf=gussf)
    except FinitaryError as exc:
        rd.fail(str(exc), "gussf")


def hmm_to_json(h: HmmParams) -> dict:
    return {"model": "hmm", "alphabet": list(h.alphabet.symbols), "l": h.l,
            "A": _mat(h.A), "E": _mat(h.E), "pi": _vec(h.pi), "constrained": h.constrained}


def hmm_from_json(data, arith: Arithmetic = RATIONAL, source="<input>") -> HmmParams:
    rd = _Reader(data, source, arith)
    alphabet = rd.alphabet()
    pi = rd.vector(rd.get("pi"), "pi")
    l = len(pi)  # noqa: E741
    if "l" in data and data["l"] != l:
        rd.fail(f"l={data['l']} but pi has {l} entries", "l")
    A = rd.matrix(rd.get("A"), "A", l, l)
    E = rd.matrix(rd.get("E"), "E", l, len(alphabet))
    constrained = data.get("constrained", True)
    if not isinstance(constrained, bool):
        rd.fail("expected true or false", "constrained")
    try:
        return HmmParams(alphabet, A, E, pi, arith=arith, constrained=constrained)
    except FinitaryError as exc:
        rd.fail(str(exc))


def markov_to_json(m: MarkovParams) -> dict:
    return {"model": "markov", "alphabet": list(m.alphabet.symbols),
            "pi": _vec(m.pi), "M": _mat(m.M)}


def markov_from_json(data, arith: Arithmetic = RATIONAL, source="<input>") -> MarkovParams:
    rd = _Reader(data, source, arith)
    alphabet = rd.alphabet()
    k = len(alphabet)
    pi = rd.vector(rd.get("pi"), "pi", k)
    M = rd.matrix(rd.get("M"), "M", k, k)
    try:
        return MarkovParams(alphabet, pi, M, arith=arith)
    except FinitaryError as exc:
        rd.fail(str(exc))


def trace_to_json(t: TraceModel) -> dict:
    sym = t.alphabet.symbols
    return {"model": "trace", "alphabet": list(sym), "r": t.r,
            "X": {sym[a]: _mat(t.X[a]) for a in t.alphabet}}


def trace_from_json(data, arith: Arithmetic = RATIONAL, source="<input>") -> TraceModel:
    rd = _Reader(data, source, arith)
    alphabet = rd.alphabet()
    r = rd.integer("r", 1)
    X_in = rd.get("X", dict)
    X = arith.zeros((len(alphabet), r, r))
    for sym in alphabet.symbols:
        if sym not in X_in:
            rd.fail("missing matrix for letter", f"X.{sym}")
        X[alphabet.index(sym)] = rd.matrix(X_in[sym], f"X.{sym}", r, r)
    return TraceModel(alphabet, X, arith)


_LOADERS = {
    "hmm": hmm_from_json,
    "markov": markov_from_json,
    "trace": trace_from_json,
    "realization": realization_from_json,
}


def model_from_json(data, arith: Arithmetic = RATIONAL, source="<input>"):
    """Dispatch on the ``"model"`` field; files without one are realizations."""
    if not isinstance(data, dict):
        raise InputError("expected a JSON object", source)
    name = data.get("model", "realization")
    if name not in _LOADERS:
        raise InputError(f"unknown model {name!r}; expected one of {sorted(_LOADERS)}",
                         source, "model")
    return _LOADERS[name](data, arith, source)


def model_to_json(model) -> dict:
    for cls, fn in ((HmmParams, hmm_to_json), (MarkovParams, markov_to_json),
                    (TraceModel, trace_to_json), (QuasiRealization, realization_to_json)):
        if isinstance(model, cls):
            return fn(model)
    if isinstance(model, DistributionTable):
        return table_to_json(model)
    raise TypeError(f"cannot serialize {type(model).__name__}")


def load_table(path, arith: Arithmetic = RATIONAL) -> DistributionTable:
    data, source = read_json(path)
    return table_from_json(data, arith, source)


def load_model(path, arith: Arithmetic = RATIONAL):
    data, source = read_json(path)
    return model_from_json(data, arith, source)


def save(obj, path=None):
    write_text(dumps(model_to_json(obj)), path)


__all__ = [
    "dumps", "hmm_from_json", "hmm_to_json", "load_model", "load_table", "markov_from_json",
    "markov_to_json", "model_from_json", "model_to_json", "read_json", "realization_from_json",
    "realization_to_json", "save", "table_from_json", "table_to_json", "trace_from_json",
    "trace_to_json", "write_text",
]
