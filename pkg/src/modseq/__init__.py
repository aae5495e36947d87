"""Calculus of periodic sequences over Z_m.

Difference/sum operators, the idempotent-nilpotent splitting, binomial
sequences mod prime powers with digit-pattern reductions, and the zero-count
recursion for the primitives of the seed [2,1,2,0,0,1,0,0] mod 4 — each fast
path paired with a brute-force oracle in `modseq.verify`.
"""

from .binomial import (
    BinomialStats,
    Lemma,
    ReductionChain,
    ReductionStep,
    alt_seq,
    bin_seq,
    bin_stats,
    double_seq,
    e_set,
    e_size_formula,
    find_reductions,
    nu_equiv,
    reduce_chain,
)
from .core import (
    DEFAULT_CAP,
    DigitVector,
    ModulusContext,
    Valuation,
    binom_mod,
    binom_mod_fast,
    digits,
    kummer_valuation,
    valuation,
)
from .errors import ResourceLimitError, UsageError
from .sequences import PeriodicSequence, constant, crt_combine, from_values, primitive, zero
from .structure import (
    GeneratingVector,
    Kind,
    PeriodPrediction,
    SplitResult,
    classify,
    generating_vector,
    predict_period_constant,
    predict_period_idempotent,
    predict_period_nilpotent,
    split,
)
from .vieru import (
    VIERU_MOD12,
    VIERU_SEED,
    Z5,
    case_of,
    d_closed,
    d_hamming,
    d_recursive,
    vieru_primitive,
    z_oracle,
    z_recursive,
)

__version__ = "1.0.0"

__all__ = [
    "BinomialStats", "Lemma", "ReductionChain", "ReductionStep",
    "alt_seq", "bin_seq", "bin_stats", "double_seq", "e_set",
    "e_size_formula", "find_reductions", "nu_equiv", "reduce_chain",
    "DEFAULT_CAP", "DigitVector", "ModulusContext", "Valuation",
    "binom_mod", "binom_mod_fast", "digits", "kummer_valuation", "valuation",
    "ResourceLimitError", "UsageError",
    "PeriodicSequence", "constant", "crt_combine", "from_values",
    "primitive", "zero",
    "GeneratingVector", "Kind", "PeriodPrediction", "SplitResult",
    "classify", "generating_vector", "predict_period_constant",
    "predict_period_idempotent", "predict_period_nilpotent", "split",
    "VIERU_MOD12", "VIERU_SEED", "Z5", "case_of", "d_closed", "d_hamming",
    "d_recursive", "vieru_primitive", "z_oracle", "z_recursive",
    "__version__",
]
