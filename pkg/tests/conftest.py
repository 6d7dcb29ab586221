import math

import numpy as np
import pytest

from sagraph.config import SolverConfig
from sagraph.families import family_spec, generate
from sagraph.models import (
    GraphBundle,
    PhaseAssignment,
    PotentialAssignment,
    Vertex,
    VertexId,
    WeightedGraph,
)


def make_bundle(
    mu: dict[str, float],
    edges: list[tuple[str, str, float]],
    theta: list[float] | None = None,
    W: list[float] | None = None,
) -> GraphBundle:
    """Small bundle from labels; edges must be listed with u < v in label order."""
    vertices = [Vertex(id=VertexId(label=label), mu=value) for label, value in mu.items()]
    ids = {vertex.id.label: vertex.id for vertex in vertices}
    graph = WeightedGraph.from_edges(vertices, [(ids[u], ids[v], b) for u, v, b in edges])
    return GraphBundle(
        graph=graph,
        theta=PhaseAssignment(values=theta) if theta is not None else PhaseAssignment.zero(),
        W=PotentialAssignment(values=W) if W is not None else PotentialAssignment.zero(),
    )


@pytest.fixture
def config():
    return SolverConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def triangle_pi():
    """3-cycle with unit weights and measure, total flux pi."""
    third = math.pi / 3
    return make_bundle(
        {"a": 1.0, "b": 1.0, "c": 1.0},
        [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)],
        theta=[third, third, -third],
    )


@pytest.fixture
def two_vertex():
    return make_bundle({"a": 1.0, "b": 1.0}, [("a", "b", 1.0)])


@pytest.fixture
def path_bundle():
    """Path a-b-c-d with mixed weights and measures."""
    return make_bundle(
        {"a": 1.0, "b": 2.0, "c": 0.5, "d": 1.5},
        [("a", "b", 1.0), ("b", "c", 3.0), ("c", "d", 0.5)],
        W=[0.0, 1.0, -0.5, 2.0],
    )


@pytest.fixture
def ex51():
    return family_spec("ex51", 1.0, 0.5)


@pytest.fixture
def ex52():
    return family_spec("ex52")


@pytest.fixture
def ex52_small(ex52):
    return generate(ex52, 8)
