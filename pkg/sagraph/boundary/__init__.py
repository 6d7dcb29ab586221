"""Distance-to-boundary bounds, tail sums and completeness verdicts."""

from sagraph.boundary.completeness import completeness_verdict
from sagraph.boundary.distance import (
    FRONTIER_ASSUMPTION,
    bundle_distance_bounds,
    family_tail_bounds,
    frontier_distances,
    tail_power_sum_bounds,
    truncation_distance_bounds,
)

__all__ = [
    "FRONTIER_ASSUMPTION",
    "bundle_distance_bounds",
    "completeness_verdict",
    "family_tail_bounds",
    "frontier_distances",
    "tail_power_sum_bounds",
    "truncation_distance_bounds",
]
