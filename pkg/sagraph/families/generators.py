"""Truncations of layered families as graph bundles."""

import logging
from math import isqrt

import numpy as np

from sagraph.errors import FamilyParameterError
from sagraph.families.asymptotics import evaluate_terms
from sagraph.families.spec import FamilyKind, LayeredFamilySpec, PotentialMode
from sagraph.models.graph import (
    GraphBundle,
    PotentialAssignment,
    Vertex,
    VertexId,
    WeightedGraph,
)

logger = logging.getLogger(__name__)


def ceil_sqrt(j: int) -> int:
    """Smallest integer N with N^2 >= j, in exact integer arithmetic."""
    return isqrt(j - 1) + 1 if j > 0 else 0


def row_sizes(spec: LayeredFamilySpec, rows: int) -> list[int]:
    if spec.kind == FamilyKind.EX51:
        return [ceil_sqrt(j) for j in range(1, rows + 1)]
    if spec.kind == FamilyKind.EX52:
        return list(range(1, rows + 1))
    if spec.kind == FamilyKind.PATH:
        return [1] * rows
    raise FamilyParameterError("custom families have no generator")


def _edges(
    spec: LayeredFamilySpec, sizes: list[int], offsets: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    us, vs, bs = [], [], []
    for j in range(1, len(sizes)):
        here = offsets[j - 1] + np.arange(sizes[j - 1])
        below = offsets[j] + np.arange(sizes[j])
        b = float(spec.weight.evaluate(j))
        if spec.kind == FamilyKind.EX52:
            us.append(np.repeat(here, below.size))
            vs.append(np.tile(below, here.size))
        else:
            # only the first vertex of a row connects downwards
            us.append(np.full(below.size, here[0]))
            vs.append(below)
        bs.append(np.full(us[-1].size, b))
        if spec.kind == FamilyKind.EX51 and below.size > 1:
            us.append(below[:-1])
            vs.append(below[1:])
            bs.append(np.full(below.size - 1, b))
    if not us:
        return np.zeros(0, np.intp), np.zeros(0, np.intp), np.zeros(0)
    return np.concatenate(us), np.concatenate(vs), np.concatenate(bs)


def _build(spec: LayeredFamilySpec, rows: int, **kwargs) -> WeightedGraph:
    sizes = row_sizes(spec, rows)
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.intp)
    row_of = np.repeat(np.arange(1, rows + 1), sizes)
    mu = spec.measure.evaluate(row_of.astype(float))
    vertices = [
        Vertex(id=VertexId.layered(j, k), mu=float(mu[offsets[j - 1] + k - 1]))
        for j in range(1, rows + 1)
        for k in range(1, sizes[j - 1] + 1)
    ]
    u, v, b = _edges(spec, sizes, offsets)
    return WeightedGraph(vertices=vertices, edge_u=u, edge_v=v, edge_b=b, **kwargs)


def vertex_rows(graph: WeightedGraph) -> np.ndarray:
    """Row of every vertex of a layered graph."""
    rows = [x.row for x in graph.vertex_ids]
    if any(row is None for row in rows):
        raise FamilyParameterError("graph vertices carry no row labels")
    return np.array(rows, dtype=int)


def family_potential(
    spec: LayeredFamilySpec, graph: WeightedGraph, mode: PotentialMode = "family"
) -> PotentialAssignment:
    """W evaluated row by row on a truncation."""
    terms = spec.potential_terms(mode)
    if not terms:
        return PotentialAssignment.zero()
    return PotentialAssignment(values=evaluate_terms(terms, vertex_rows(graph).astype(float)))


def family_q(spec: LayeredFamilySpec, graph: WeightedGraph) -> PotentialAssignment | None:
    """q evaluated row by row, or None when the family declares no q."""
    if spec.q is None:
        return None
    return PotentialAssignment(values=evaluate_terms(spec.q, vertex_rows(graph).astype(float)))


def generate(
    spec: LayeredFamilySpec, rows: int, potential: PotentialMode = "family"
) -> GraphBundle:
    """Truncation of the family to its first `rows` rows.

    Degrees and weight sums of the infinite graph are recorded on the result;
    vertices with neighbors beyond the cut form the frontier.
    """
    if rows < 1:
        raise FamilyParameterError(f"rows must be at least 1 (got {rows})")

    extended = _build(spec, rows + 1)
    n = sum(row_sizes(spec, rows))
    ambient_degree = extended.degrees()[:n]
    graph = _build(
        spec,
        rows,
        ambient_degree=ambient_degree,
        ambient_strength=extended.strengths()[:n],
    )
    frontier_idx = np.flatnonzero(ambient_degree > graph.degrees())
    frontier = [graph.vertices[i].id for i in frontier_idx]

    logger.info(
        "generated %s truncation: %d rows, %d vertices, %d edges",
        spec.kind.value,
        rows,
        n,
        graph.edge_count,
    )
    return GraphBundle(
        graph=graph,
        W=family_potential(spec, graph, potential),
        frontier=frontier,
        family=spec,
        rows=rows,
    )
