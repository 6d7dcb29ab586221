import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sagraph.covering import (
    cell_holonomy,
    cell_lowest_eigenvalue,
    covering_report,
    effective_potential,
    evaluate_covering,
    triangle_covering,
    validate_covering,
)
from sagraph.errors import CoveringError, FamilyShapeError
from sagraph.families import family_spec, generate, vertex_rows
from sagraph.graph import covering_from_dict, covering_to_dict
from sagraph.models import CoveringCell, GoodCovering, PhaseAssignment, VertexId
from sagraph.verification import cycle_covering, random_bundle

from conftest import make_bundle


def _triangle_cell(bundle):
    a, b, c = bundle.graph.vertex_ids
    return CoveringCell(vertices=[a, b, c], edges=[(a, b), (b, c), (a, c)])


def test_flux_pi_cell_eigenvalue(triangle_pi):
    p = cell_lowest_eigenvalue(triangle_pi.graph, triangle_pi.theta, _triangle_cell(triangle_pi))
    assert p == pytest.approx(1.0, abs=1e-12)


def test_flux_free_cell_eigenvalue(triangle_pi):
    cell = _triangle_cell(triangle_pi)
    assert cell_lowest_eigenvalue(triangle_pi.graph, PhaseAssignment.zero(), cell) == pytest.approx(
        0.0, abs=1e-12
    )


def test_cell_with_small_measure_has_larger_eigenvalue():
    third = math.pi / 3
    bundle = make_bundle(
        {"a": 1.0, "b": 0.5, "c": 0.5},
        [("a", "b", 7.0), ("b", "c", 7.0), ("a", "c", 7.0)],
        theta=[third, third, -third],
    )
    # unit weights on the cell regardless of host weights
    assert cell_lowest_eigenvalue(bundle.graph, bundle.theta, _triangle_cell(bundle)) >= 1.0


@pytest.mark.parametrize("rows, cells", [(2, 1), (3, 2), (4, 3), (10, 16)])
def test_triangle_covering_counts(ex51, rows, cells):
    bundle = generate(ex51, rows)
    cover, _ = triangle_covering(bundle)
    assert cover.m == 2
    assert len(cover.cells) == cells
    assert validate_covering(bundle.graph, cover).valid


def test_two_row_covering_is_one_triangle(ex51):
    cover, _ = triangle_covering(generate(ex51, 2))
    assert [x.label for x in cover.cells[0].vertices] == ["x1_1", "x2_1", "x2_2"]


def test_every_cell_carries_flux_pi(ex51):
    bundle = generate(ex51, 12)
    cover, phase = triangle_covering(bundle)
    magnetic = bundle.with_theta(phase)
    for cell in cover.cells:
        assert cell_holonomy(magnetic, cell.vertices) == pytest.approx(math.pi)


def test_triangle_covering_rejects_other_shapes(ex52, two_vertex):
    with pytest.raises(FamilyShapeError):
        triangle_covering(generate(ex52, 3))
    with pytest.raises(FamilyShapeError, match="no row labels"):
        triangle_covering(two_vertex)


def test_apex_effective_potential(ex51):
    bundle = generate(ex51, 6)
    cover, phase = triangle_covering(bundle)
    report = covering_report(bundle.graph, phase, cover)
    first = report.cells[0]
    assert first.vertices == ["x1_1", "x2_1", "x2_2"]
    assert first.p >= 1.0
    assert first.inf_b == 1.0
    assert report.effective_potential["x1_1"] == pytest.approx(first.p / 2)
    assert report.effective_potential["x1_1"] >= 0.5


def test_effective_potential_row_minorant():
    spec = family_spec("ex51", 1.0, 0.6)
    rows = 15
    bundle = generate(spec, rows)
    cover, phase = triangle_covering(bundle)
    W_e = effective_potential(bundle.graph, phase, cover).array(bundle.graph)
    row_of = vertex_rows(bundle.graph)
    interior = (row_of >= 2) & (row_of < rows)
    assert np.all(W_e[interior] >= 0.5 * (row_of[interior] - 1.0) ** spec.alpha - 1e-9)


def test_flux_free_covering_gives_zero_potential(ex51):
    bundle = generate(ex51, 8)
    cover, _ = triangle_covering(bundle)
    W_e = effective_potential(bundle.graph, PhaseAssignment.zero(), cover)
    assert_allclose(W_e.array(bundle.graph), 0.0, atol=1e-12)


def test_missing_edge_is_reported(triangle_pi):
    a, b, c = triangle_pi.graph.vertex_ids
    cover = GoodCovering(cells=[CoveringCell(vertices=[a, b, c], edges=[(a, b), (b, c)])], m=1)
    report = validate_covering(triangle_pi.graph, cover)
    assert "edge uncovered: a-c" in report.violations
    with pytest.raises(CoveringError, match="edge uncovered"):
        evaluate_covering(triangle_pi.graph, triangle_pi.theta, cover)


def test_multiplicity_above_degree_is_reported(triangle_pi):
    cell = _triangle_cell(triangle_pi)
    cover = GoodCovering(cells=[cell, cell], m=1)
    violations = validate_covering(triangle_pi.graph, cover).violations
    assert any("more than m = 1" in v for v in violations)


def test_disconnected_cell_and_foreign_edge():
    bundle = make_bundle(
        {"a": 1.0, "b": 1.0, "c": 1.0, "d": 1.0},
        [("a", "b", 1.0), ("b", "c", 1.0), ("c", "d", 1.0)],
    )
    a, b, c, d = bundle.graph.vertex_ids
    cover = GoodCovering(
        cells=[
            CoveringCell(vertices=[a, d], edges=[(a, d)]),
            CoveringCell(vertices=[a, b, c, d], edges=[(a, b), (b, c), (c, d)]),
        ],
        m=1,
    )
    violations = validate_covering(bundle.graph, cover).violations
    assert "cell 0 edge a-d is not an edge of the graph" in violations
    assert "cell 0 is not connected" in violations


@pytest.mark.parametrize("seed", range(5))
def test_cycle_covering_is_good(seed):
    bundle = random_bundle(np.random.default_rng(seed))
    cover = cycle_covering(bundle.graph)
    assert validate_covering(bundle.graph, cover).valid
    evaluated = evaluate_covering(bundle.graph, bundle.theta, cover)
    assert all(cell.p >= -1e-10 for cell in evaluated.cells)


def test_covering_file_round_trip(ex51):
    bundle = generate(ex51, 5)
    cover, _ = triangle_covering(bundle)
    again = covering_from_dict(covering_to_dict(cover), bundle.graph)
    assert again == cover
    assert again.cells[0].vertices[0] == VertexId.layered(1, 1)
