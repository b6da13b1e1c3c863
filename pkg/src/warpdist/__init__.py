"""Sequence distances: exact, low-distance, and approximate.

Dynamic time warping and general edit distance over pluggable metric spaces,
with a bounded run-indexed DP for the low-distance regime, gap-search
approximations over well-separated tree metrics and magnitudes, the padded
reductions tying edit distance to warping and to LCS, and brute-force
oracles for verification.
"""

from .dtw import (
    BoundedResult,
    SubproblemKey,
    dtw_banded,
    dtw_bounded,
    dtw_doubling,
    dtw_quadratic,
    dtw_threshold_or_exceed,
    subproblem_value,
)
from .dtw_approx import (
    EXACT_SMALL,
    GAP_BRACKETED,
    ApproxEstimate,
    dtw_approx_reals,
    dtw_approximate,
    dtw_gap,
)
from .edit_approx import (
    EditGapVerdict,
    ed_approximate,
    ed_banded,
    ed_gap,
    simplify_magnitude,
)
from .errors import DomainError, GuardError, MetricDefinitionError, UnknownLetterError
from .metric import (
    NULL,
    HammingMetric,
    MetricSpace,
    NullAugmentedMetric,
    RealLineMetric,
    TableMetric,
    TreeMetric,
    magnitude,
    validate_metric,
)
from .oracles import dtw_bruteforce, ed_bruteforce, lcs_bruteforce
from .reductions import ed_general, ed_simple, ed_via_dtw, ed_via_lcs, lcs, pad
from .runlen import (
    RunEncoding,
    correspondence_cost,
    encode_runs,
    is_expansion,
    validate_correspondence,
)
from .wstree import WellSeparatedTree, embed_reals, simplify_tree

__all__ = [
    "NULL",
    "ApproxEstimate",
    "BoundedResult",
    "DomainError",
    "EXACT_SMALL",
    "EditGapVerdict",
    "GAP_BRACKETED",
    "GuardError",
    "HammingMetric",
    "MetricDefinitionError",
    "MetricSpace",
    "NullAugmentedMetric",
    "RealLineMetric",
    "RunEncoding",
    "SubproblemKey",
    "TableMetric",
    "TreeMetric",
    "UnknownLetterError",
    "WellSeparatedTree",
    "correspondence_cost",
    "dtw_approx_reals",
    "dtw_approximate",
    "dtw_banded",
    "dtw_bounded",
    "dtw_bruteforce",
    "dtw_doubling",
    "dtw_gap",
    "dtw_quadratic",
    "dtw_threshold_or_exceed",
    "ed_approximate",
    "ed_banded",
    "ed_bruteforce",
    "ed_gap",
    "ed_general",
    "ed_simple",
    "ed_via_dtw",
    "ed_via_lcs",
    "embed_reals",
    "encode_runs",
    "is_expansion",
    "lcs",
    "lcs_bruteforce",
    "magnitude",
    "pad",
    "simplify_magnitude",
    "simplify_tree",
    "subproblem_value",
    "validate_correspondence",
    "validate_metric",
]

__version__ = "0.1.0"
