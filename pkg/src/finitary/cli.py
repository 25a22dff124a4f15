"""Command-line front end.

Every subcommand reads JSON (from a file or stdin) and writes JSON, except
``hankel`` which writes CSV. Exit status is 0 on success, 1 when a check
fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .core import Alphabet, Arithmetic, RATIONAL, floating, format_scalar
from .errors import ConditionAViolated, ConditionBViolated, FinitaryError
from .hankel import build_partial_hankel, rank
from .invariants import check_markov_invariants, check_membership_gnd, probe_conjecture
from .lifting import Polynomial, check_lift_finite, check_lift_hmm, slc_probe
from .models import (HmmParams, MarkovParams, TraceModel, hmm_to_realization, markov_to_table,
                     random_hmm, random_markov, random_realization, random_table, random_trace,
                     trace_to_realization)
from .realization import QuasiRealization, extract_realization

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _alphabet(text: str) -> Alphabet:
    if text.isdigit():
        return Alphabet.of_size(int(text))
    return Alphabet(tuple(s.strip() for s in text.split(",")))


def _arith(args) -> Arithmetic:
    return RATIONAL if args.mode == "rational" else floating(args.tol)


def _emit(args, data) -> None:
    io.write_text(io.dumps(data), args.output)


def cmd_gen(args) -> int:
    arith = _arith(args)
    alphabet = _alphabet(args.alphabet)
    seed = args.seed
    if args.model == "hmm":
        obj = random_hmm(args.states, alphabet, seed, arith)
    elif args.model == "markov":
        obj = random_markov(alphabet, seed, arith)
    elif args.model == "realization":
        obj = random_realization(args.d, alphabet, seed, gussf=not args.no_gussf, arith=arith)
    elif args.model == "trace":
        obj = random_trace(args.r, alphabet, seed, arith)
    else:
        obj = random_table(alphabet, args.n, seed, arith)
    _emit(args, io.model_to_json(obj))
    return EXIT_OK


def _tabulate(model, n: int):
    if isinstance(model, HmmParams):
        return hmm_to_realization(model).tabulate(n)
    if isinstance(model, MarkovParams):
        return markov_to_table(model, n)
    if isinstance(model, TraceModel):
        return trace_to_realization(model).tabulate(n)
    return model.tabulate(n)


def cmd_tabulate(args) -> int:
    model = io.load_model(args.model, _arith(args))
    _emit(args, io.table_to_json(_tabulate(model, args.n)))
    return EXIT_OK


def cmd_hankel(args) -> int:
    table = io.load_table(args.input, _arith(args))
    io.write_text(build_partial_hankel(table, args.N, args.M).to_csv(), args.output)
    return EXIT_OK


def cmd_rank(args) -> int:
    table = io.load_table(args.input, _arith(args))
    report = rank(build_partial_hankel(table, args.N, args.M))
    _emit(args, {"N": args.N, "M": args.M, **report.to_dict(table.alphabet)})
    return EXIT_OK


def cmd_realize(args) -> int:
    table = io.load_table(args.input, _arith(args))
    try:
        r = extract_realization(table, args.d)
    except ConditionAViolated as exc:
        _emit(args, {"error": str(exc), "condition": "a", "rank_found": exc.rank,
                     "bound": exc.bound, **table.arith.describe()})
        return EXIT_FAIL
    except ConditionBViolated as exc:
        _emit(args, {"error": str(exc), "condition": "b", "axis": exc.axis,
                     "offending_word": table.alphabet.format_word(exc.word),
                     **table.arith.describe()})
        return EXIT_FAIL
    _emit(args, io.realization_to_json(r))
    return EXIT_OK


def cmd_check_gnd(args) -> int:
    table = io.load_table(args.input, _arith(args))
    report = check_membership_gnd(table, args.d, limit=args.limit)
    out = report.to_dict(table.alphabet)
    if args.probe_conjecture:
        out["conjecture_probe"] = probe_conjecture(table, args.d)
    _emit(args, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check_markov(args) -> int:
    table = io.load_table(args.input, _arith(args))
    report = check_markov_invariants(table, limit=args.limit)
    _emit(args, report.to_dict(table.alphabet))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_lift_check(args) -> int:
    arith = _arith(args)
    table = io.load_table(args.input, arith)
    if args.model == "gnd":
        report = check_lift_finite(table, args.d)
    else:
        hmm = None
        if args.params:
            data, source = io.read_json(args.params)
            hmm = io.hmm_from_json(data, arith, source)
        report = check_lift_hmm(table, args.d, hmm)
    out = report.to_dict()
    if args.poly:
        data, source = io.read_json(args.poly)
        poly = Polynomial.from_json(data, table.alphabet, source)
        out["polynomial"] = {k: format_scalar(v) for k, v in poly.lifted(table).items()}
    _emit(args, out)
    return EXIT_FAIL if report.equivalence_holds is False else EXIT_OK


def _load_realization(path, arith):
    model = io.load_model(path, arith)
    if isinstance(model, HmmParams):
        return hmm_to_realization(model)
    if isinstance(model, TraceModel):
        return trace_to_realization(model)
    if not isinstance(model, QuasiRealization):
        raise FinitaryError(f"{path}: slc-probe needs realizations, HMMs or trace models")
    return model


def cmd_slc_probe(args) -> int:
    arith = _arith(args)
    a = _load_realization(args.first, arith)
    b = _load_realization(args.second, arith)
    result = slc_probe(a, b, args.d, args.horizon)
    _emit(args, {"d": args.d, "horizon": args.horizon, **result.to_dict(a.alphabet),
                 **arith.describe()})
    return EXIT_OK if result else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("rational", "float"), default="rational")
    common.add_argument("--tol", type=float, default=1e-9, help="relative zero tolerance (float mode)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--limit", type=int, default=10, help="maximum number of witnesses")
    common.add_argument("--output", "-o", help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="finitary", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def table_input(p):
        p.add_argument("input", nargs="?", help="distribution file (default: stdin)")

    p = add("gen", cmd_gen, "emit random model parameters or a random table")
    p.add_argument("--model", choices=("hmm", "markov", "realization", "trace", "table"),
                   required=True)
    p.add_argument("--alphabet", default="2", help="size or comma-separated symbols")
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--no-gussf", action="store_true")

    p = add("tabulate", cmd_tabulate, "tabulate a model over all words of length n")
    p.add_argument("--model", default="-", help="model file (default: stdin)")
    p.add_argument("--n", type=int, required=True)

    for name, func, help_text in (("hankel", cmd_hankel, "Hankel block as CSV"),
                                  ("rank", cmd_rank, "rank and pivots of a Hankel block")):
        p = add(name, func, help_text)
        table_input(p)
        p.add_argument("--N", type=int, required=True, help="maximum row (suffix) length")
        p.add_argument("--M", type=int, required=True, help="maximum column (prefix) length")

    p = add("realize", cmd_realize, "extract a quasi-realization")
    table_input(p)
    p.add_argument("--d", type=int, required=True)

    p = add("check-gnd", cmd_check_gnd, "membership in the dimension-d model")
    table_input(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--probe-conjecture", action="store_true")

    p = add("check-markov", cmd_check_markov, "Markov chain determinant scan")
    table_input(p)

    p = add("lift-check", cmd_lift_check, "lifting equivalence report")
    table_input(p)
    p.add_argument("--model", choices=("gnd", "hmm"), default="gnd")
    p.add_argument("--d", type=int, required=True, help="dimension, or number of hidden states")
    p.add_argument("--params", help="HMM parameter file certifying membership")
    p.add_argument("--poly", help="polynomial file to evaluate in lifted form")

    p = add("slc-probe", cmd_slc_probe, "compare two generators beyond length 2d-1")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FinitaryError, ValueError) as exc:
        print(f"finitary {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
