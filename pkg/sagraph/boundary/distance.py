"""Bounds on the distance D(x) from a vertex to the Cauchy boundary."""

import logging
import math

import numpy as np

from sagraph.errors import DivergentTailError, TruncationTooSmallError
from sagraph.families.closed_forms import closed_form_D_lower
from sagraph.families.spec import FamilyKind, LayeredFamilySpec, LengthKind
from sagraph.metrics.paths import distances_from
from sagraph.models.graph import EdgeLengthAssignment, GraphBundle, VertexId, WeightedGraph
from sagraph.models.reports import DistanceBounds

logger = logging.getLogger(__name__)

FRONTIER_ASSUMPTION = "every Cauchy point is a limit of paths exiting through the frontier"


def tail_power_sum_bounds(p: float, n: int) -> tuple[float, float]:
    """Certified bounds on sum_{j >= n} (j+1)^(-p) by integral comparison."""
    if p <= 1:
        raise DivergentTailError(f"divergent tail: exponent {p} <= 1")
    if n < 1:
        raise TruncationTooSmallError(f"tail start must be at least 1 (got {n})")
    lower = (n + 1) ** (1 - p) / (p - 1)
    upper = n ** (1 - p) / (p - 1) + (n + 1) ** (-p)
    return lower, upper


def family_tail_bounds(
    spec: LayeredFamilySpec | None, rows: int | None, kind: LengthKind = "sigma"
) -> tuple[float, float]:
    """Bounds on the distance from the frontier of a truncation to the boundary.

    Without certified step metadata the bounds are (0, inf). A divergent spine
    series gives an infinite tail.
    """
    step = spec.steps.get(kind) if spec is not None else None
    if step is None or rows is None:
        return 0.0, math.inf
    if step.exponent <= 1:
        if step.escape_bounded_by_spine:
            return math.inf, math.inf
        return 0.0, math.inf
    lower, upper = tail_power_sum_bounds(step.exponent, rows)
    tail_lb = step.lower_coef * lower if step.escape_bounded_by_spine else 0.0
    return tail_lb, step.upper_coef * upper


def frontier_distances(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, frontier: list[VertexId]
) -> np.ndarray:
    """min over frontier vertices f of d(x, f), for every vertex x."""
    if not frontier:
        return np.full(graph.size, math.inf)
    return distances_from(graph, lengths, [graph.index_of(f) for f in frontier])


def truncation_distance_bounds(
    truncation: WeightedGraph,
    lengths: EdgeLengthAssignment,
    x: VertexId,
    frontier: list[VertexId],
    tail_lb: float = 0.0,
    tail_ub: float = math.inf,
) -> DistanceBounds:
    """D(x) bracketed by distances to the frontier plus the family's tail bounds."""
    i = truncation.index_of(x)
    near = frontier_distances(truncation, lengths, frontier)[i]
    return DistanceBounds(
        vertex=x.label,
        lower=float(near + tail_lb),
        upper=float(near + tail_ub),
        assumptions=[FRONTIER_ASSUMPTION] if frontier else [],
    )


def bundle_distance_bounds(
    bundle: GraphBundle, lengths: EdgeLengthAssignment, kind: LengthKind = "sigma"
) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper bounds on D at every vertex of a bundle.

    For ex51 truncations measured with sigma_1 the lower bound is the larger of
    the truncation bound and the closed-form row bound.
    """
    graph = bundle.graph
    spec = bundle.family
    tail_lb, tail_ub = family_tail_bounds(spec, bundle.rows, kind)
    near = frontier_distances(graph, lengths, bundle.frontier)
    lower = near + tail_lb
    upper = near + tail_ub

    if (
        spec is not None
        and spec.kind == FamilyKind.EX51
        and bundle.sigma is None
        and kind == "sigma"
        and spec.forcing is not None
    ):
        closed = np.array([closed_form_D_lower(spec, x.row) for x in graph.vertex_ids])
        lower = np.maximum(lower, closed)
    logger.debug(
        "distance bounds: tail (%.6g, %.6g), min lower %.6g", tail_lb, tail_ub, lower.min()
    )
    return lower, upper
