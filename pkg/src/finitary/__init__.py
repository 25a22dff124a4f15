"""Finite-dimensional string functions: Hankel ranks, quasi-realizations and model invariants."""

from .core import (Alphabet, Arithmetic, Classification, DistributionTable, RATIONAL, TableKind,
                   classify, floating, marginal, shortlex_words)
from .errors import (ConditionAViolated, ConditionBViolated, DimensionShrink, EmptyTable,
                     FinitaryError, InputError, InvalidParameters, LengthBudgetExceeded,
                     PathBudgetExceeded, WordTooLong)
from .hankel import PartialHankel, RankReport, build_partial_hankel, dimension, hankel_rank, rank
from .invariants import (MembershipReport, MinorWitness, check_markov_invariants,
                         check_membership_gnd, enumerate_failing_minors)
from .lifting import (LiftReport, SlcResult, check_lift_finite, check_lift_hmm,
                      reconstruct_extension, slc_probe)
from .models import (HmmParams, MarkovParams, TraceModel, hmm_brute_force, hmm_to_realization,
                     markov_to_table, random_hmm, random_markov, random_realization,
                     random_table, random_trace, shift, trace_components, trace_eval,
                     trace_to_realization)
from .realization import (QuasiRealization, embed_dimension, evaluate, extract_realization,
                          realization_to_table, select_basis, verify_gussf)

__all__ = [name for name in dir() if not name.startswith("_")]
