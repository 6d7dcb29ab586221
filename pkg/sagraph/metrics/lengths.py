"""Edge-length assignments: the default sigma_1, rescaled sigma_q, intrinsic checks."""

import logging

import networkx as nx
import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.errors import DegreeZeroError, QBelowOneError
from sagraph.graph.core import to_networkx
from sagraph.models.graph import (
    EdgeLengthAssignment,
    GraphBundle,
    PotentialAssignment,
    WeightedGraph,
)
from sagraph.models.reports import IntrinsicCheckResult

logger = logging.getLogger(__name__)


def sigma1_default(graph: WeightedGraph) -> EdgeLengthAssignment:
    """sigma_1(x, y) = b(x, y)^(-1/2) * min{mu(x)/deg(x), mu(y)/deg(y)}^(1/2).

    Degrees of the infinite family are used where the graph records them, so
    lengths on a truncation agree with those of the full graph.
    """
    degrees = graph.ambient_degrees()
    isolated = np.flatnonzero(degrees == 0)
    if isolated.size:
        raise DegreeZeroError(f"degree zero at vertex {graph.vertices[isolated[0]].id}")

    ratio = graph.mu / degrees
    smaller = np.minimum(ratio[graph.edge_u], ratio[graph.edge_v])
    return EdgeLengthAssignment(values=np.sqrt(smaller / graph.edge_b))


def sigma_q(
    graph: WeightedGraph, sigma: EdgeLengthAssignment, q: PotentialAssignment
) -> EdgeLengthAssignment:
    """sigma_q(x, y) = min{q(x)^(-1/2), q(y)^(-1/2)} * sigma(x, y)."""
    values = q.array(graph) if q.values is not None else np.ones(graph.size)
    below = np.flatnonzero(values < 1.0)
    if below.size:
        raise QBelowOneError(f"q below one at vertex {graph.vertices[below[0]].id}")

    scale = 1.0 / np.sqrt(np.maximum(values[graph.edge_u], values[graph.edge_v]))
    return EdgeLengthAssignment(values=scale * sigma.values)


def intrinsic_ratios(graph: WeightedGraph, lengths: EdgeLengthAssignment) -> np.ndarray:
    """(1/mu(x)) sum_y b(x, y) len(x, y)^2 for every vertex."""
    terms = graph.edge_b * lengths.values**2
    sums = np.bincount(graph.edge_u, weights=terms, minlength=graph.size) + np.bincount(
        graph.edge_v, weights=terms, minlength=graph.size
    )
    return sums / graph.mu


def neighbor_distances(graph: WeightedGraph, lengths: EdgeLengthAssignment) -> np.ndarray:
    """d(x, y) for every edge, which may be shorter than len(x, y) through a detour."""
    g = to_networkx(graph, lengths.values)
    distances = lengths.values.astype(float, copy=True)
    for i in range(graph.size):
        nbrs, edge_ids = graph.neighbor_slice(i)
        outgoing = edge_ids[nbrs > i]
        if not outgoing.size:
            continue
        found = nx.single_source_dijkstra_path_length(
            g, i, cutoff=float(lengths.values[outgoing].max()), weight="weight"
        )
        for j, k in zip(nbrs[nbrs > i].tolist(), outgoing.tolist()):
            distances[k] = min(distances[k], found.get(j, distances[k]))
    return distances


def _check(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, config: SolverConfig | None
) -> IntrinsicCheckResult:
    config = resolve(config)
    ratios = intrinsic_ratios(graph, lengths)
    if not ratios.size:
        return IntrinsicCheckResult(max_ratio=0.0, worst_vertex=None, passes=True)
    worst = int(np.argmax(ratios))
    max_ratio = float(ratios[worst])
    return IntrinsicCheckResult(
        max_ratio=max_ratio,
        worst_vertex=graph.vertices[worst].id.label,
        passes=max_ratio <= 1.0 + config.tolerance,
    )


def check_intrinsic(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, config: SolverConfig | None = None
) -> IntrinsicCheckResult:
    """Check (1/mu(x)) sum_y b(x, y) d(x, y)^2 <= 1 for the path metric d of `lengths`.

    Strongly intrinsic lengths pass without computing d, since d(x, y) <= len(x, y).
    Otherwise the verdict uses the neighbor path distances d(x, y), so edges that
    shortcuts make shorter than their own length are measured by the shortcut.
    """
    strong = _check(graph, lengths, config)
    if strong.passes:
        return strong
    logger.debug("lengths not strongly intrinsic; measuring neighbor distances")
    return _check(graph, EdgeLengthAssignment(values=neighbor_distances(graph, lengths)), config)


def check_strongly_intrinsic(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, config: SolverConfig | None = None
) -> IntrinsicCheckResult:
    """Check the edgewise condition sum_y b(x, y) sigma(x, y)^2 <= mu(x)."""
    return _check(graph, lengths, config)


def lipschitz_constant(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, f: np.ndarray
) -> float:
    """Least K with |f(x) - f(y)| <= K len(x, y) on every edge."""
    if not graph.edge_count:
        return 0.0
    f = np.asarray(f, dtype=float)
    slopes = np.abs(f[graph.edge_u] - f[graph.edge_v]) / lengths.values
    return float(slopes.max())


def bundle_lengths(bundle: GraphBundle) -> EdgeLengthAssignment:
    """Edge lengths given with the bundle, or sigma_1 when none were supplied."""
    return bundle.sigma if bundle.sigma is not None else sigma1_default(bundle.graph)
