"""Maximum-entropy contiguous aggregation of discrete distributions."""
from .core import (
    AggregationResult,
    ContiguousPartition,
    ProbabilityVector,
    aggregate,
    entropy,
    entropy_like_sum,
    majorizes,
    prefix_sums,
    validate_distribution,
)
from .exact_dp import DPTable, backtrack, fill_table, solve_exact
from .greedy import GreedyDiagnostics, SegmentRecord, greedy1, greedy2, leveled_vector, theorem_constants
from .metrics import (
    MetricsReport,
    dispersion_identity_residual,
    fano_dispersion,
    guessing_entropy,
    metrics_report,
    mutual_information_view,
)
from .oracle import brute_force, enumerate_partitions

__version__ = "0.1.0"
