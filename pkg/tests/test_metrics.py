import itertools
import math

import networkx as nx
import numpy as np
import pytest
from numpy.testing import assert_allclose

from sagraph.errors import DegreeZeroError, QBelowOneError
from sagraph.families import family_q, family_spec, generate
from sagraph.families.closed_forms import closed_form_sigma1_step, closed_form_sigma_q_step
from sagraph.graph import to_networkx
from sagraph.metrics import (
    bundle_lengths,
    check_intrinsic,
    check_strongly_intrinsic,
    distances_from,
    lipschitz_constant,
    path_metric,
    sigma_q,
)
from sagraph.metrics.lengths import sigma1_default
from sagraph.models import EdgeLengthAssignment, PotentialAssignment, VertexId
from sagraph.verification import random_bundle

from conftest import make_bundle


def _spine_lengths(bundle, lengths, rows):
    graph = bundle.graph
    return [
        lengths.length(graph, VertexId.layered(j, 1), VertexId.layered(j + 1, 1))
        for j in range(1, rows)
    ]


def test_sigma1_first_spine_step(ex51):
    bundle = generate(ex51, 5)
    first = _spine_lengths(bundle, bundle_lengths(bundle), 2)[0]
    assert first == pytest.approx(math.sqrt(1 / 8), abs=1e-7)
    assert first == pytest.approx(0.3535534, abs=1e-7)


@pytest.mark.parametrize("alpha, beta", [(1.0, 0.5), (1.0, 0.6), (2.0, 0.3)])
def test_sigma1_matches_closed_form_along_spine(alpha, beta):
    spec = family_spec("ex51", alpha, beta)
    rows = 40
    bundle = generate(spec, rows)
    steps = _spine_lengths(bundle, bundle_lengths(bundle), rows)
    expected = [closed_form_sigma1_step(spec, j) for j in range(1, rows)]
    assert_allclose(steps, expected, rtol=1e-12)


def test_ex52_steps(ex52):
    bundle = generate(ex52, 12)
    sigma = bundle_lengths(bundle)
    steps = _spine_lengths(bundle, sigma, 12)
    assert steps[0] == pytest.approx(0.5946036, abs=1e-7)
    assert_allclose(steps, [closed_form_sigma1_step(ex52, k) for k in range(1, 12)], rtol=1e-12)

    rescaled = sigma_q(bundle.graph, sigma, family_q(ex52, bundle.graph))
    q_steps = _spine_lengths(bundle, rescaled, 12)
    assert q_steps[0] == pytest.approx(0.2973018, abs=1e-7)
    assert_allclose(q_steps, [closed_form_sigma_q_step(ex52, k) for k in range(1, 12)], rtol=1e-12)


def test_sigma_q_rejects_q_below_one(path_bundle):
    graph = path_bundle.graph
    q = PotentialAssignment(values=[1.0, 0.5, 2.0, 3.0])
    with pytest.raises(QBelowOneError, match="at vertex b"):
        sigma_q(graph, sigma1_default(graph), q)


def test_sigma1_needs_neighbors():
    bundle = make_bundle({"a": 1.0, "b": 1.0, "c": 1.0}, [("a", "b", 1.0)])
    with pytest.raises(DegreeZeroError):
        sigma1_default(bundle.graph)


@pytest.mark.parametrize("seed", range(5))
def test_sigma1_is_strongly_intrinsic(seed):
    bundle = random_bundle(np.random.default_rng(seed))
    result = check_strongly_intrinsic(bundle.graph, sigma1_default(bundle.graph))
    assert result.passes
    assert result.max_ratio <= 1.0 + 1e-12


def test_intrinsic_checks_on_families(ex52):
    bundle = generate(ex52, 30)
    sigma = bundle_lengths(bundle)
    assert check_strongly_intrinsic(bundle.graph, sigma).passes
    assert check_intrinsic(bundle.graph, sigma).max_ratio <= 1.0 + 1e-12


def test_intrinsic_but_not_strongly():
    # a long edge next to a short detour: d(a, c) = 0.2 while sigma(a, c) = 5
    bundle = make_bundle(
        {"a": 1.0, "b": 1.0, "c": 1.0},
        [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)],
    )
    lengths = EdgeLengthAssignment(values=[0.1, 0.1, 5.0])
    strong = check_strongly_intrinsic(bundle.graph, lengths)
    assert not strong.passes
    assert strong.worst_vertex in {"a", "c"}
    weak = check_intrinsic(bundle.graph, lengths)
    assert weak.passes
    assert weak.max_ratio == pytest.approx(0.01 + 0.04)


def test_too_long_edges_fail_both():
    bundle = make_bundle({"a": 1.0, "b": 1.0}, [("a", "b", 1.0)])
    lengths = EdgeLengthAssignment(values=[2.0])
    assert check_intrinsic(bundle.graph, lengths).max_ratio == pytest.approx(4.0)
    assert not check_intrinsic(bundle.graph, lengths).passes


def test_spine_is_geodesic(ex51):
    rows = 60
    bundle = generate(ex51, rows)
    sigma = bundle_lengths(bundle)
    start = VertexId.layered(1, 1)
    distances = path_metric(bundle.graph, sigma, start)
    steps = np.cumsum(_spine_lengths(bundle, sigma, rows))
    found = [distances[VertexId.layered(j, 1)] for j in range(2, rows + 1)]
    assert_allclose(found, steps, rtol=1e-12)


def _brute_force(bundle, lengths, source):
    g = to_networkx(bundle.graph, lengths.values)
    best = np.full(bundle.graph.size, math.inf)
    best[source] = 0.0
    for target in range(bundle.graph.size):
        for path in nx.all_simple_paths(g, source, target):
            total = sum(g[a][b]["weight"] for a, b in itertools.pairwise(path))
            best[target] = min(best[target], total)
    return best


@pytest.mark.parametrize("seed", range(200))
def test_dijkstra_matches_path_enumeration(seed):
    rng = np.random.default_rng(seed)
    bundle = random_bundle(rng, n=7)
    lengths = EdgeLengthAssignment(values=rng.uniform(0.1, 3.0, size=bundle.graph.edge_count))
    assert_allclose(distances_from(bundle.graph, lengths, [0]), _brute_force(bundle, lengths, 0))


def test_unreachable_is_infinite():
    bundle = make_bundle({"a": 1.0, "b": 1.0, "c": 1.0}, [("a", "b", 2.0)])
    distances = distances_from(bundle.graph, EdgeLengthAssignment(values=[0.5]), [0])
    assert distances[1] == 0.5
    assert math.isinf(distances[2])


def test_ex52_q_inverse_root_is_one_lipschitz(ex52):
    bundle = generate(ex52, 60)
    graph = bundle.graph
    sigma = bundle_lengths(bundle)
    q = family_q(ex52, graph).array(graph)
    lengths = sigma_q(graph, sigma, family_q(ex52, graph))
    assert lipschitz_constant(graph, lengths, q**-0.5) <= 1.0
    assert lipschitz_constant(graph, sigma, q**-0.5) <= 1.0
