"""Structural operations on weighted graphs: validation, degrees, neighbors."""

import logging

import networkx as nx
import numpy as np

from sagraph.errors import InvalidGraphError
from sagraph.models.graph import (
    GraphBundle,
    PhaseAssignment,
    ValidationReport,
    VertexId,
    WeightedGraph,
)

logger = logging.getLogger(__name__)


def to_networkx(graph: WeightedGraph, lengths: np.ndarray | None = None) -> nx.Graph:
    """Dense-index networkx view of the graph, optionally with edge lengths as `weight`."""
    g = nx.Graph()
    g.add_nodes_from(range(graph.size))
    if lengths is None:
        g.add_edges_from(zip(graph.edge_u.tolist(), graph.edge_v.tolist()))
    else:
        g.add_weighted_edges_from(
            zip(graph.edge_u.tolist(), graph.edge_v.tolist(), np.asarray(lengths).tolist())
        )
    return g


def connected_components(graph: WeightedGraph) -> list[list[VertexId]]:
    """Connected components, each sorted, ordered by their smallest vertex."""
    ids = graph.vertex_ids
    components = [
        sorted(ids[i] for i in component)
        for component in nx.connected_components(to_networkx(graph))
    ]
    return sorted(components, key=lambda component: component[0].sort_key())


def validate(bundle: GraphBundle) -> ValidationReport:
    """Check the structural axioms of a weighted magnetic graph.

    Never raises; every violation found is listed in the report.
    """
    graph = bundle.graph
    ids = graph.vertex_ids
    violations: list[str] = []

    seen: set[VertexId] = set()
    for x in ids:
        if x in seen:
            violations.append(f"duplicate vertex {x}")
        seen.add(x)

    for x, mu in zip(ids, graph.mu):
        if not np.isfinite(mu) or mu <= 0:
            violations.append(f"non-positive measure at {x}")

    pairs: set[tuple[int, int]] = set()
    for i, j, b in zip(graph.edge_u.tolist(), graph.edge_v.tolist(), graph.edge_b.tolist()):
        label = f"{ids[i]}-{ids[j]}"
        if i == j:
            violations.append(f"self-loop at {ids[i]}")
        if not np.isfinite(b) or b <= 0:
            violations.append(f"non-positive edge weight on {label}")
        if (i, j) in pairs:
            violations.append(f"duplicate edge {label}")
        pairs.add((i, j))

    theta = bundle.phases()
    for k in np.flatnonzero(~np.isfinite(theta) | (np.abs(theta) > np.pi)):
        violations.append(f"θ out of range on {ids[graph.edge_u[k]]}-{ids[graph.edge_v[k]]}")

    W = bundle.potential()
    for i in np.flatnonzero(~np.isfinite(W)):
        violations.append(f"non-finite potential at {ids[i]}")

    if bundle.sigma is not None:
        sigma = bundle.sigma.values
        for k in np.flatnonzero(~np.isfinite(sigma) | (sigma <= 0)):
            violations.append(
                f"non-positive edge length on {ids[graph.edge_u[k]]}-{ids[graph.edge_v[k]]}"
            )

    components = nx.number_connected_components(to_networkx(graph)) if graph.size else 0
    if components > 1:
        violations.append(f"disconnected components: {components}")

    logger.debug(
        "validated graph with %d vertices, %d edges: %d violations",
        graph.size,
        graph.edge_count,
        len(violations),
    )
    return ValidationReport(
        violations=violations, connected=components <= 1, components=components
    )


def require_valid(bundle: GraphBundle) -> GraphBundle:
    """Return the bundle unchanged, or raise InvalidGraphError listing its violations."""
    report = validate(bundle)
    if not report.valid:
        raise InvalidGraphError(report.violations)
    return bundle


def vertex_degree(graph: WeightedGraph, x: VertexId, ambient: bool = False) -> int:
    """deg(x), the number of neighbors of x (in the infinite family if `ambient`)."""
    i = graph.index_of(x)
    degrees = graph.ambient_degrees() if ambient else graph.degrees()
    return int(degrees[i])


def weighted_degrees(graph: WeightedGraph, ambient: bool = False) -> np.ndarray:
    """Deg(x) = (1/mu(x)) sum_y b(x, y) for every vertex."""
    return graph.strengths(ambient=ambient) / graph.mu


def weighted_degree(graph: WeightedGraph, x: VertexId, ambient: bool = False) -> float:
    """Deg(x) = (1/mu(x)) sum_y b(x, y)."""
    i = graph.index_of(x)
    return float(weighted_degrees(graph, ambient=ambient)[i])


def neighbors(graph: WeightedGraph, x: VertexId) -> list[tuple[VertexId, float]]:
    """Neighbors of x with their edge weights, in ascending VertexId order."""
    nbrs, edge_ids = graph.neighbor_slice(graph.index_of(x))
    ids = graph.vertex_ids
    return [(ids[j], float(graph.edge_b[k])) for j, k in zip(nbrs.tolist(), edge_ids.tolist())]


def laplacian_bundle(graph: WeightedGraph) -> GraphBundle:
    """Bundle for the ordinary Laplacian: zero phase, zero potential."""
    return GraphBundle(graph=graph, theta=PhaseAssignment.zero())
