"""Uniqueness of extensions and the lifting equivalences.

A dimension-``d`` string function is pinned down by its values on words
of length ``2d - 1``; ``reconstruct_extension`` and ``slc_probe`` exercise
that. ``check_lift_finite`` and ``check_lift_hmm`` compare membership of
a length ``n + 1`` table with membership of its shifts ``v -> p(av)`` and
of its marginal at length ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Alphabet, DistributionTable, Word, format_scalar, max_abs
from .errors import DimensionShrink, InputError, LengthBudgetExceeded
from .invariants import check_membership_gnd
from .models import HmmParams, hmm_to_realization, shift
from .realization import QuasiRealization, extract_realization


def reconstruct_extension(table: DistributionTable, d: int, target_n: int) -> DistributionTable:
    """The unique dimension ``<= d`` extension of ``table`` tabulated at ``target_n``.

    Any table with ``n >= 2d - 1`` is accepted; the extraction raises
    :class:`ConditionAViolated` or :class:`ConditionBViolated` when no
    such extension exists.
    """
    return extract_realization(table, d).tabulate(target_n)


@dataclass(frozen=True)
class LiftReport:
    """Membership of a table over words of length ``n + 1`` against its parts.

    A membership field is ``None`` when it could not be decided.
    ``evidence`` records how each fact was obtained.
    """

    model: str
    n: int
    d_or_l: int
    whole_in_image: bool | None
    all_shifts_in_image: bool | None
    marginal_in_image: bool | None
    evidence: dict = field(default_factory=dict)

    @property
    def equivalence_holds(self) -> bool | None:
        facts = (self.whole_in_image, self.all_shifts_in_image, self.marginal_in_image)
        if any(f is None for f in facts):
            return None
        return self.whole_in_image == (self.all_shifts_in_image and self.marginal_in_image)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "n": self.n,
            "d_or_l": self.d_or_l,
            "whole_in_image": self.whole_in_image,
            "all_shifts_in_image": self.all_shifts_in_image,
            "marginal_in_image": self.marginal_in_image,
            "equivalence_holds": self.equivalence_holds,
            "evidence": self.evidence,
        }


def _require_lift_length(table: DistributionTable, d: int):
    if table.n < 2 * d + 1:
        raise LengthBudgetExceeded(
            f"lifting with parameter {d} needs a table of length >= {2 * d + 1}, got {table.n}")


def _parts(table: DistributionTable):
    """The shifted tables (one per letter) and the marginal table at ``n``."""
    return [shift(table, a) for a in table.alphabet], table.truncate(table.n - 1)


def check_lift_finite(table: DistributionTable, d: int) -> LiftReport:
    """Evaluate both sides of the finite-dimensional lifting equivalence."""
    _require_lift_length(table, d)
    shifts, marg = _parts(table)
    whole = check_membership_gnd(table, d).passed
    shift_flags = [check_membership_gnd(s, d).passed for s in shifts]
    marg_flag = check_membership_gnd(marg, d).passed
    fmt = table.alphabet.symbols
    evidence = {
        "whole": "rank-test",
        "shifts": {fmt[a]: flag for a, flag in zip(table.alphabet, shift_flags)},
        "marginal": "rank-test",
        **table.arith.describe(),
    }
    return LiftReport("finite-dim", table.n - 1, d, whole, all(shift_flags), marg_flag, evidence)


def _matches(hmm: HmmParams, table: DistributionTable) -> bool:
    return hmm_to_realization(hmm).tabulate(table.n).allclose(table)


def _fit_single_state(table: DistributionTable) -> HmmParams | None:
    """One-state HMM reproducing ``table``, or ``None`` if none exists.

    A one-state HMM emits independently: ``p(v) = pi * prod E[a_i]``.
    """
    arith = table.arith
    k = len(table.alphabet)
    scale = max(max_abs(table.values), 1.0)
    total = table.total
    if any(v < 0 and not arith.is_zero(v, scale) for v in table.values):
        return None
    if arith.is_zero(total, scale):
        if not all(arith.is_zero(v, scale) for v in table.values):
            return None
        E = [[arith.scalar(Fraction(1, k))] * k]
        return HmmParams(table.alphabet, [[1]], E, [0], arith=arith, constrained=False)
    E = [[table.marginal((a,)) / total for a in table.alphabet]] if table.n else \
        [[arith.scalar(Fraction(1, k))] * k]
    hmm = HmmParams(table.alphabet, [[1]], E, [total], arith=arith, constrained=False)
    return hmm if _matches(hmm, table) else None


def _hmm_membership(table: DistributionTable, l: int, hmm: HmmParams | None):  # noqa: E741
    """``(verdict, evidence)`` for one table; ``verdict`` may be ``None``."""
    if hmm is not None and hmm.l <= l and _matches(hmm, table):
        return True, "certified-member"
    if l == 1:
        return (True, "certified-member") if _fit_single_state(table) is not None \
            else (False, "certified-non-member")
    scale = max(max_abs(table.values), 1.0)
    if any(v < 0 and not table.arith.is_zero(v, scale) for v in table.values):
        return False, "negative-value"
    if not check_membership_gnd(table, l).passed:
        return False, "fails-finite-dim-necessary-condition"
    return None, "finite-dim-necessary-condition"


def check_lift_hmm(table: DistributionTable, l: int, hmm: HmmParams | None = None) -> LiftReport:  # noqa: E741
    """Lifting equivalence for hidden Markov models with ``l`` states.

    Membership is only certified by explicit parameters: those supplied
    in ``hmm`` (pushed forward one step for each shift) or, for ``l = 1``,
    fitted directly. Otherwise a failed rank test of dimension ``l``
    disproves membership, and a passed one leaves it undecided.
    """
    _require_lift_length(table, l)
    shifts, marg = _parts(table)
    whole, whole_ev = _hmm_membership(table, l, hmm)
    certified = hmm if whole_ev == "certified-member" and hmm is not None else None
    if certified is None and l == 1 and whole:
        certified = _fit_single_state(table)
    shift_verdicts = []
    for a, s in zip(table.alphabet, shifts):
        pushed = None
        if certified is not None:
            T = hmm_to_realization(certified).T
            pushed = certified.with_pi(T[a] @ certified.pi)
        shift_verdicts.append(_hmm_membership(s, l, pushed))
    marg_verdict = _hmm_membership(marg, l, certified)
    flags = [v for v, _ in shift_verdicts]
    if any(f is False for f in flags):
        all_shifts = False
    elif any(f is None for f in flags):
        all_shifts = None
    else:
        all_shifts = True
    sym = table.alphabet.symbols
    evidence = {
        "whole": whole_ev,
        "shifts": {sym[a]: ev for a, (_, ev) in zip(table.alphabet, shift_verdicts)},
        "marginal": marg_verdict[1],
        **table.arith.describe(),
    }
    return LiftReport("hmm", table.n - 1, l, whole, all_shifts, marg_verdict[0], evidence)


@dataclass(frozen=True)
class SlcResult:
    """Outcome of one uniqueness probe; truthy unless a counterexample was found."""

    holds: bool
    premise: bool
    counterexample: Word | None = None
    values: tuple | None = None

    def __bool__(self):
        return self.holds

    def to_dict(self, alphabet: Alphabet) -> dict:
        out = {"holds": self.holds, "premise": self.premise}
        if self.counterexample is not None:
            out["counterexample"] = alphabet.format_word(self.counterexample)
            out["values"] = [format_scalar(v) for v in self.values]
        return out


def _first_difference(p: DistributionTable, q: DistributionTable):
    scale = max(max_abs(p.values), max_abs(q.values), 1.0)
    arith = p.arith if not p.arith.exact else q.arith
    for (w, a), b in zip(p.items(), q.values):
        if not arith.equal(a, b, scale):
            return w, (a, b)
    return None


def slc_probe(gen_a: QuasiRealization, gen_b: QuasiRealization, d: int,
              horizon: int) -> SlcResult:
    """Check that agreement on words of length ``2d - 1`` forces agreement at ``horizon``."""
    for g in (gen_a, gen_b):
        if g.d > d:
            raise DimensionShrink(f"generator has dimension {g.d} > {d}")
    short = 2 * d - 1
    if _first_difference(gen_a.tabulate(short), gen_b.tabulate(short)) is not None:
        return SlcResult(True, False)
    diff = _first_difference(gen_a.tabulate(horizon), gen_b.tabulate(horizon))
    if diff is None:
        return SlcResult(True, True)
    return SlcResult(False, True, diff[0], diff[1])


class Polynomial:
    """Polynomial in the table coordinates ``p(v)``.

    ``terms`` is a list of ``(coefficient, {word: exponent})`` pairs. Words
    shorter than the table length are read as marginals.
    """

    def __init__(self, terms):
        self.terms = [(c, dict(m)) for c, m in terms]

    @classmethod
    def from_json(cls, data, alphabet: Alphabet, source: str = "<poly>") -> "Polynomial":
        if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
            raise InputError("expected an object with a 'terms' list", source, "terms")
        terms = []
        for i, t in enumerate(data["terms"]):
            where = f"terms[{i}]"
            if not isinstance(t, dict) or "coef" not in t or not isinstance(t.get("monomial"), dict):
                raise InputError("each term needs 'coef' and a 'monomial' object", source, where)
            try:
                coef = Fraction(str(t["coef"]))
                mono = {alphabet.parse_word(w): int(e) for w, e in t["monomial"].items()}
            except (ValueError, KeyError, ZeroDivisionError) as exc:
                raise InputError(str(exc), source, where) from None
            if any(e < 0 for e in mono.values()):
                raise InputError("exponents must be non-negative", source, where)
            terms.append((coef, mono))
        return cls(terms)

    def degree(self) -> int:
        return max((sum(m.values()) for _, m in self.terms), default=0)

    def max_word_length(self) -> int:
        return max((len(w) for _, m in self.terms for w in m), default=0)

    def evaluate(self, table: DistributionTable):
        if self.max_word_length() > table.n:
            raise LengthBudgetExceeded(
                f"polynomial uses words of length {self.max_word_length()} > n={table.n}")
        arith = table.arith
        total = arith.scalar(0)
        for c, mono in self.terms:
            term = arith.scalar(c)
            for w, e in mono.items():
                term = term * table.marginal(w) ** e
            total = total + term
        return total

    def lifted(self, table: DistributionTable) -> dict:
        """Values of the lifted polynomials ``h_a`` and ``h_+`` on a longer table.

        ``h_a(p) = h(p^a)`` with ``p^a: v -> p(av)`` and ``h_+(p)`` is ``h``
        applied to the marginal of ``p`` one letter shorter.
        """
        shifts, marg = _parts(table)
        out = {table.alphabet.symbols[a]: self.evaluate(s) for a, s in zip(table.alphabet, shifts)}
        out["+"] = self.evaluate(marg)
        return out


__all__ = [
    "LiftReport", "Polynomial", "SlcResult", "check_lift_finite", "check_lift_hmm",
    "reconstruct_extension", "slc_probe",
]
