"""Triangle covering of the triangular layered family with flux pi per cell."""

import math

import numpy as np

from sagraph.errors import FamilyShapeError
from sagraph.models.covering import CoveringCell, GoodCovering
from sagraph.models.graph import GraphBundle, PhaseAssignment, VertexId, wrap_angle

SHAPE_ERROR = "not a triangle-covered family"


def triangle_covering(bundle: GraphBundle) -> tuple[GoodCovering, PhaseAssignment]:
    """One 3-cycle cell per horizontal edge, with theta = pi on horizontals.

    Edges between consecutive rows must form a spanning tree in which every
    horizontal edge (x_{j,k}, x_{j,k+1}) closes the unique triangle through
    x_{j-1,1}. Tree edges get phase 0, so each cell carries holonomy pi.
    """
    graph = bundle.graph
    ids = graph.vertex_ids
    if any(x.row is None for x in ids):
        raise FamilyShapeError(f"{SHAPE_ERROR}: vertices carry no row labels")

    index = {(x.row, x.index): i for i, x in enumerate(ids)}
    theta = np.zeros(graph.edge_count)
    cells: list[CoveringCell] = []
    tree_edges = 0

    for k, (i, j) in enumerate(zip(graph.edge_u.tolist(), graph.edge_v.tolist())):
        x, y = ids[i], ids[j]
        if x.row == y.row:
            if abs(x.index - y.index) != 1:
                raise FamilyShapeError(f"{SHAPE_ERROR}: edge {x}-{y} skips a vertex")
            apex = index.get((x.row - 1, 1))
            if apex is None or None in (graph.edge_index(apex, i), graph.edge_index(apex, j)):
                raise FamilyShapeError(f"{SHAPE_ERROR}: edge {x}-{y} closes no triangle")
            theta[k] = math.pi
            top = ids[apex]
            cells.append(CoveringCell(vertices=[top, x, y], edges=[(top, x), (top, y), (x, y)]))
        elif abs(x.row - y.row) == 1:
            upper = x if x.row < y.row else y
            if upper.index != 1:
                raise FamilyShapeError(f"{SHAPE_ERROR}: edge {x}-{y} does not leave a spine vertex")
            tree_edges += 1
        else:
            raise FamilyShapeError(f"{SHAPE_ERROR}: edge {x}-{y} skips a row")

    if tree_edges != graph.size - 1:
        raise FamilyShapeError(f"{SHAPE_ERROR}: row-to-row edges do not form a spanning tree")

    cells.sort(key=lambda cell: tuple(x.sort_key() for x in cell.vertices[1:]))
    return GoodCovering(cells=cells, m=2), PhaseAssignment(values=theta)


def cell_holonomy(bundle: GraphBundle, cycle: list[VertexId]) -> float:
    """Sum of theta around a closed walk, reduced into (-pi, pi]."""
    total = sum(
        bundle.theta.phase(bundle.graph, cycle[a], cycle[(a + 1) % len(cycle)])
        for a in range(len(cycle))
    )
    return wrap_angle(total)
