"""Sublinear randomized greedy maximum coverage over black-box sets."""

from maxcover.backends import (
    BucketHashSet,
    CountedBTree,
    InfeasibleSkewError,
    LatticeRectangle,
    PackingError,
    SkewedBackend,
    SortedArraySet,
    UnsortedArraySet,
)
from maxcover.baselines import (
    ExactSolution,
    brute_force_min_cover,
    brute_force_optimum,
    equal_size_pad,
    exact_greedy,
)
from maxcover.estimation import (
    approximate_difference,
    random_test,
    sample_count,
    shared_sample_budget_g,
)
from maxcover.greedy import (
    STRATEGIES,
    CoverageResult,
    approximate_maximum_cover,
    derive_xi,
)
from maxcover.oracle import (
    BiasProfile,
    CostCounters,
    CounterSnapshot,
    CoverageInstance,
    EmptySetError,
    SetHandle,
    make_handle,
)

__version__ = "0.1.0"

__all__ = [
    "BiasProfile",
    "BucketHashSet",
    "CostCounters",
    "CounterSnapshot",
    "CountedBTree",
    "CoverageInstance",
    "CoverageResult",
    "EmptySetError",
    "ExactSolution",
    "InfeasibleSkewError",
    "LatticeRectangle",
    "PackingError",
    "STRATEGIES",
    "SetHandle",
    "SkewedBackend",
    "SortedArraySet",
    "UnsortedArraySet",
    "approximate_difference",
    "approximate_maximum_cover",
    "brute_force_min_cover",
    "brute_force_optimum",
    "derive_xi",
    "equal_size_pad",
    "exact_greedy",
    "make_handle",
    "random_test",
    "sample_count",
    "shared_sample_budget_g",
]
