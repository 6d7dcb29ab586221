"""Path metrics d_sigma induced by edge lengths."""

import math

import networkx as nx
import numpy as np

from sagraph.graph.core import to_networkx
from sagraph.models.graph import EdgeLengthAssignment, VertexId, WeightedGraph


def distances_from(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, sources: list[int]
) -> np.ndarray:
    """min over sources s of d(s, x) for every vertex; +inf where unreachable."""
    g = to_networkx(graph, lengths.values)
    found = nx.multi_source_dijkstra_path_length(g, set(sources), weight="weight")
    distances = np.full(graph.size, math.inf)
    for i, d in found.items():
        distances[i] = d
    return distances


def path_metric(
    graph: WeightedGraph, lengths: EdgeLengthAssignment, source: VertexId
) -> dict[VertexId, float]:
    """Single-source distances d_sigma(source, x); +inf for unreachable vertices."""
    distances = distances_from(graph, lengths, [graph.index_of(source)])
    return {x: float(d) for x, d in zip(graph.vertex_ids, distances)}
