"""Seeded random instances for the verification suites."""

import math

import networkx as nx
import numpy as np

from sagraph.models.covering import CoveringCell, GoodCovering
from sagraph.models.graph import (
    GraphBundle,
    PhaseAssignment,
    PotentialAssignment,
    Vertex,
    VertexId,
    WeightedGraph,
)

MIN_VERTICES = 2
MAX_VERTICES = 20
WEIGHT_RANGE = (0.1, 10.0)
MEASURE_RANGE = (0.1, 10.0)
POTENTIAL_RANGE = (-5.0, 5.0)


def random_connected_graph(rng: np.random.Generator, n: int) -> nx.Graph:
    """Erdos-Renyi graph on n vertices, redrawn until connected."""
    p = min(1.0, 2.0 * math.log(max(n, 2)) / n)
    while True:
        g = nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))
        if nx.is_connected(g):
            return g


def random_bundle(
    rng: np.random.Generator,
    n: int | None = None,
    magnetic: bool = True,
    potential: bool = True,
) -> GraphBundle:
    """Random connected magnetic graph with uniform b, mu, theta and W."""
    n = n if n is not None else int(rng.integers(MIN_VERTICES, MAX_VERTICES + 1))
    g = random_connected_graph(rng, n)
    edges = np.array(sorted(g.edges()), dtype=np.intp).reshape(-1, 2)
    vertices = [
        Vertex(id=VertexId(label=f"v{i:02d}"), mu=float(mu))
        for i, mu in enumerate(rng.uniform(*MEASURE_RANGE, size=n))
    ]
    graph = WeightedGraph.from_arrays(
        vertices, edges[:, 0], edges[:, 1], rng.uniform(*WEIGHT_RANGE, size=len(edges))
    )
    theta = (
        PhaseAssignment(values=rng.uniform(-math.pi, math.pi, size=graph.edge_count))
        if magnetic
        else PhaseAssignment.zero()
    )
    W = (
        PotentialAssignment(values=rng.uniform(*POTENTIAL_RANGE, size=n))
        if potential
        else PotentialAssignment.zero()
    )
    return GraphBundle(graph=graph, theta=theta, W=W)


def random_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def cycle_covering(graph: WeightedGraph) -> GoodCovering:
    """Cells from a cycle basis, plus one cell per edge on no basis cycle."""
    g = nx.Graph()
    g.add_edges_from(zip(graph.edge_u.tolist(), graph.edge_v.tolist()))
    ids = graph.vertex_ids
    cells, counts = [], {}
    for cycle in nx.cycle_basis(g):
        ring = list(zip(cycle, cycle[1:] + cycle[:1]))
        cells.append(
            CoveringCell(
                vertices=[ids[i] for i in cycle], edges=[(ids[i], ids[j]) for i, j in ring]
            )
        )
        for i, j in ring:
            key = (min(i, j), max(i, j))
            counts[key] = counts.get(key, 0) + 1
    for i, j in zip(graph.edge_u.tolist(), graph.edge_v.tolist()):
        key = (min(i, j), max(i, j))
        if key not in counts:
            cells.append(CoveringCell(vertices=[ids[i], ids[j]], edges=[(ids[i], ids[j])]))
            counts[key] = 1
    return GoodCovering(cells=cells, m=max(counts.values(), default=1))
