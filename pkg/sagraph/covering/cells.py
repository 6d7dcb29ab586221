"""Good coverings: validation, cell eigenvalues p_l and the effective potential W_e."""

import logging
from collections import Counter

import networkx as nx
import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.errors import CoveringError
from sagraph.models.covering import CoveringCell, GoodCovering
from sagraph.models.graph import (
    GraphBundle,
    PhaseAssignment,
    PotentialAssignment,
    ValidationReport,
    Vertex,
    WeightedGraph,
)
from sagraph.models.reports import CellReport, CoveringReport
from sagraph.operators.assembly import assemble
from sagraph.operators.spectrum import spectrum

logger = logging.getLogger(__name__)


def validate_covering(graph: WeightedGraph, cover: GoodCovering) -> ValidationReport:
    """Check that cells are connected subgraphs covering every vertex, every edge 1..m times."""
    violations: list[str] = []
    covered_vertices = set()
    multiplicity: Counter[tuple[int, int]] = Counter()

    for position, cell in enumerate(cover.cells):
        if not cell.vertices:
            violations.append(f"cell {position} is empty")
            continue
        unknown = [x for x in cell.vertices if x not in graph]
        if unknown:
            violations.append(f"cell {position} has unknown vertex {unknown[0]}")
            continue
        members = {graph.index_of(x) for x in cell.vertices}
        covered_vertices |= members

        local = nx.Graph()
        local.add_nodes_from(members)
        for x, y in cell.edges:
            if x not in graph or y not in graph:
                violations.append(f"cell {position} has unknown edge {x}-{y}")
                continue
            i, j = graph.index_of(x), graph.index_of(y)
            k = graph.edge_index(i, j)
            if k is None:
                violations.append(f"cell {position} edge {x}-{y} is not an edge of the graph")
                continue
            if i not in members or j not in members:
                violations.append(f"cell {position} edge {x}-{y} leaves the cell")
                continue
            if local.has_edge(i, j):
                continue
            local.add_edge(i, j)
            multiplicity[(min(i, j), max(i, j))] += 1
        if not nx.is_connected(local):
            violations.append(f"cell {position} is not connected")

    ids = graph.vertex_ids
    for i in range(graph.size):
        if i not in covered_vertices:
            violations.append(f"vertex uncovered: {ids[i]}")
    for i, j in zip(graph.edge_u.tolist(), graph.edge_v.tolist()):
        count = multiplicity[(min(i, j), max(i, j))]
        if count == 0:
            violations.append(f"edge uncovered: {ids[i]}-{ids[j]}")
        elif count > cover.m:
            violations.append(
                f"edge {ids[i]}-{ids[j]} covered {count} times, more than m = {cover.m}"
            )

    return ValidationReport(violations=violations)


def cell_bundle(graph: WeightedGraph, theta: PhaseAssignment, cell: CoveringCell) -> GraphBundle:
    """The cell as a graph with unit weights, host measure and restricted phase."""
    host = [graph.index_of(x) for x in cell.vertices]
    position = {i: a for a, i in enumerate(host)}
    vertices = [Vertex(id=graph.vertices[i].id, mu=graph.vertices[i].mu) for i in host]
    host_theta = theta.array(graph)

    u, v, angles = [], [], []
    seen = set()
    for x, y in cell.edges:
        i, j = graph.index_of(x), graph.index_of(y)
        if (min(i, j), max(i, j)) in seen:
            continue
        seen.add((min(i, j), max(i, j)))
        k = graph.edge_index(i, j)
        forward = graph.edge_u[k] == i
        u.append(position[i])
        v.append(position[j])
        angles.append(host_theta[k] if forward else -host_theta[k])

    local = WeightedGraph.from_arrays(vertices, np.array(u), np.array(v), np.ones(len(u)))
    # from_arrays may reorient edges; keep theta(x, y) attached to its direction
    rank = local.ranks()
    u_arr, v_arr = np.array(u, dtype=np.intp), np.array(v, dtype=np.intp)
    swapped = rank[u_arr] > rank[v_arr] if u_arr.size else np.zeros(0, dtype=bool)
    angles = np.where(swapped, -np.array(angles), np.array(angles))
    return GraphBundle(graph=local, theta=PhaseAssignment(values=angles))


def cell_lowest_eigenvalue(
    graph: WeightedGraph,
    theta: PhaseAssignment,
    cell: CoveringCell,
    config: SolverConfig | None = None,
) -> float:
    """p_l: lowest eigenvalue of the cell's magnetic Laplacian with b = 1 on E_l."""
    return spectrum(assemble(cell_bundle(graph, theta, cell)), config).lowest


def cell_inf_weight(graph: WeightedGraph, cell: CoveringCell) -> float:
    return min(graph.weight(x, y) for x, y in cell.edges)


def evaluate_covering(
    graph: WeightedGraph,
    theta: PhaseAssignment,
    cover: GoodCovering,
    config: SolverConfig | None = None,
) -> GoodCovering:
    """Validate the covering and fill in p_l and inf b on every cell."""
    report = validate_covering(graph, cover)
    if not report.valid:
        raise CoveringError("invalid covering: " + "; ".join(report.violations))
    config = resolve(config)
    cells = [
        cell.model_copy(
            update={
                "p": cell_lowest_eigenvalue(graph, theta, cell, config),
                "inf_b": cell_inf_weight(graph, cell),
            }
        )
        for cell in cover.cells
    ]
    logger.debug("evaluated %d covering cells", len(cells))
    return GoodCovering(cells=cells, m=cover.m)


def effective_potential(
    graph: WeightedGraph,
    theta: PhaseAssignment,
    cover: GoodCovering,
    config: SolverConfig | None = None,
) -> PotentialAssignment:
    """W_e(x) = (1/m) sum over cells containing x of p_l * inf_{E_l} b."""
    if any(cell.p is None or cell.inf_b is None for cell in cover.cells):
        cover = evaluate_covering(graph, theta, cover, config)
    values = np.zeros(graph.size)
    for cell in cover.cells:
        for x in cell.vertices:
            values[graph.index_of(x)] += cell.p * cell.inf_b
    return PotentialAssignment(values=values / cover.m)


def covering_report(
    graph: WeightedGraph,
    theta: PhaseAssignment,
    cover: GoodCovering,
    config: SolverConfig | None = None,
) -> CoveringReport:
    """Per-cell p_l and inf b together with W_e, for display and JSON output."""
    evaluated = evaluate_covering(graph, theta, cover, config)
    W_e = effective_potential(graph, theta, evaluated, config)
    return CoveringReport(
        m=evaluated.m,
        cells=[
            CellReport(
                index=position,
                vertices=[x.label for x in cell.vertices],
                p=cell.p,
                inf_b=cell.inf_b,
            )
            for position, cell in enumerate(evaluated.cells)
        ],
        effective_potential={
            x.label: float(value) for x, value in zip(graph.vertex_ids, W_e.array(graph))
        },
    )
