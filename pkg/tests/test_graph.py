import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sagraph.errors import InputError, InvalidGraphError, VertexNotFoundError
from sagraph.families import family_spec, generate
from sagraph.graph import (
    bundle_digest,
    bundle_from_dict,
    bundle_to_dict,
    connected_components,
    neighbors,
    read_bundle,
    require_valid,
    validate,
    vertex_degree,
    weighted_degree,
    write_bundle,
)
from sagraph.models import VertexId

from conftest import make_bundle


@pytest.mark.parametrize(
    "kind, alpha, beta",
    [
        ("ex51", 1.0, 0.5),
        ("ex51", 1.0, 0.6),
        ("ex51", 2.0, 0.1),
        ("ex52", None, None),
        ("path", None, None),
    ],
)
def test_generated_families_are_valid(kind, alpha, beta):
    bundle = generate(family_spec(kind, alpha, beta), 16)
    report = validate(bundle)
    assert report.valid, report.violations
    assert report.connected


def test_row_counts():
    ex51 = generate(family_spec("ex51", 1.0, 0.5), 4)
    assert ex51.graph.size == 7

    ex52 = generate(family_spec("ex52"), 3)
    assert ex52.graph.size == 6
    assert ex52.graph.edge_count == 8


def test_vertex_degrees(ex51, ex52):
    bundle = generate(ex52, 6)
    assert vertex_degree(bundle.graph, VertexId.layered(4, 2)) == 8
    assert weighted_degree(bundle.graph, VertexId.layered(4, 2), ambient=True) == pytest.approx(4.0)

    triangular = generate(ex51, 4)
    assert vertex_degree(triangular.graph, VertexId.layered(2, 1)) == 4
    assert weighted_degree(triangular.graph, VertexId.layered(1, 1)) == pytest.approx(2.0)


def test_ambient_degree_on_frontier(ex52):
    bundle = generate(ex52, 4)
    x = VertexId.layered(4, 1)
    # row 4 has only row 3 inside the truncation
    assert vertex_degree(bundle.graph, x) == 3
    assert vertex_degree(bundle.graph, x, ambient=True) == 8
    assert x in bundle.frontier


def test_neighbors_of_apex(ex51):
    bundle = generate(ex51, 3)
    found = neighbors(bundle.graph, VertexId.layered(1, 1))
    assert [x for x, _ in found] == [VertexId.layered(2, 1), VertexId.layered(2, 2)]
    assert [b for _, b in found] == [1.0, 1.0]


def test_validation_lists_every_violation():
    bundle = make_bundle(
        {"a": 1.0, "b": -1.0, "c": 1.0, "d": 1.0},
        [("a", "b", 1.0), ("a", "b", 2.0), ("a", "a", 1.0), ("c", "d", 0.0)],
    )
    report = validate(bundle)
    text = "\n".join(report.violations)
    assert "non-positive measure at b" in text
    assert "duplicate edge a-b" in text
    assert "self-loop at a" in text
    assert "non-positive edge weight on c-d" in text
    assert "disconnected components: 2" in text
    assert not report.connected
    assert report.components == 2


def test_validation_flags_non_finite_phase_and_potential(path_bundle):
    bundle = make_bundle(
        {"a": 1.0, "b": 1.0},
        [("a", "b", 1.0)],
        theta=[math.nan],
        W=[0.0, math.inf],
    )
    text = "\n".join(validate(bundle).violations)
    assert "θ out of range on a-b" in text
    assert "non-finite potential at b" in text
    assert validate(path_bundle).valid


def test_connected_components_sorted():
    bundle = make_bundle({"a": 1.0, "b": 1.0, "c": 1.0}, [("b", "c", 1.0)])
    components = connected_components(bundle.graph)
    assert [[x.label for x in c] for c in components] == [["a"], ["b", "c"]]


def test_require_valid(path_bundle):
    assert require_valid(path_bundle) is path_bundle
    split = make_bundle({"a": 1.0, "b": 1.0, "c": 1.0}, [("b", "c", 1.0)])
    with pytest.raises(InvalidGraphError, match="disconnected components: 2") as info:
        require_valid(split)
    assert info.value.violations == ["disconnected components: 2"]


def test_phase_is_antisymmetric(triangle_pi):
    graph = triangle_pi.graph
    a, b = VertexId(label="a"), VertexId(label="b")
    forward = triangle_pi.theta.phase(graph, a, b)
    assert forward == pytest.approx(math.pi / 3)
    assert triangle_pi.theta.phase(graph, b, a) == pytest.approx(-forward)


def test_file_round_trip_keeps_orientation(tmp_path):
    data = {
        "vertices": [{"id": "p", "mu": 2.0}, {"id": "q", "mu": 0.5}],
        "edges": [{"u": "q", "v": "p", "b": 1.5, "theta": 0.25}],
        "potential": {"q": -1.0},
    }
    bundle = bundle_from_dict(data)
    p, q = VertexId(label="p"), VertexId(label="q")
    assert bundle.theta.phase(bundle.graph, q, p) == pytest.approx(0.25)
    assert bundle.W.value(bundle.graph, q) == -1.0

    path = tmp_path / "graph.json"
    write_bundle(bundle, path)
    again = read_bundle(path)
    assert again.theta.phase(again.graph, q, p) == pytest.approx(0.25)
    assert_allclose(again.graph.mu, bundle.graph.mu)
    assert bundle_digest(again) == bundle_digest(bundle)


def test_generated_bundle_survives_file(tmp_path, ex51):
    bundle = generate(ex51, 6)
    path = tmp_path / "ex51.json"
    write_bundle(bundle, path)
    again = read_bundle(path)
    assert again.rows == 6
    assert again.family == bundle.family
    assert again.frontier == bundle.frontier
    assert_allclose(again.graph.ambient_strength, bundle.graph.ambient_strength)
    assert bundle_to_dict(again) == bundle_to_dict(bundle)


@pytest.mark.parametrize(
    "payload, error",
    [
        ({"vertices": [{"id": "a", "mu": 1.0}], "edges": [{"u": "a", "v": "z", "b": 1.0}]},
         VertexNotFoundError),
        ({"vertices": [{"id": "a", "mu": 1.0, "colour": "red"}]}, InputError),
        ({"edges": []}, InputError),
    ],
)
def test_malformed_files_raise(payload, error):
    with pytest.raises(error):
        bundle_from_dict(payload)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(InputError, match="not valid JSON"):
        read_bundle(path)


def test_partial_edge_lengths_rejected():
    data = {
        "vertices": [{"id": "a", "mu": 1.0}, {"id": "b", "mu": 1.0}, {"id": "c", "mu": 1.0}],
        "edges": [{"u": "a", "v": "b", "b": 1.0, "sigma": 0.5}, {"u": "b", "v": "c", "b": 1.0}],
    }
    with pytest.raises(InputError, match="every edge or on none"):
        bundle_from_dict(data)


def test_digest_ignores_key_order():
    data = {
        "vertices": [{"id": "a", "mu": 1.0}, {"id": "b", "mu": 1.0}],
        "edges": [{"u": "a", "v": "b", "b": 1.0}],
    }
    shuffled = json.loads(json.dumps(data, sort_keys=True))
    assert bundle_digest(bundle_from_dict(data)) == bundle_digest(bundle_from_dict(shuffled))
    assert np.isfinite(bundle_from_dict(data).graph.mu).all()
