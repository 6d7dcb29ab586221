"""Edge lengths, intrinsic checks and path metrics."""

from sagraph.metrics.lengths import (
    bundle_lengths,
    check_intrinsic,
    check_strongly_intrinsic,
    intrinsic_ratios,
    lipschitz_constant,
    neighbor_distances,
    sigma1_default,
    sigma_q,
)
from sagraph.metrics.paths import distances_from, path_metric

__all__ = [
    "bundle_lengths",
    "check_intrinsic",
    "check_strongly_intrinsic",
    "distances_from",
    "intrinsic_ratios",
    "lipschitz_constant",
    "neighbor_distances",
    "path_metric",
    "sigma1_default",
    "sigma_q",
]
