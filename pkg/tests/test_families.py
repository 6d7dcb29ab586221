import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sagraph.config import SolverConfig
from sagraph.errors import FamilyParameterError
from sagraph.families import (
    PowerTerm,
    ceil_sqrt,
    closed_form_D_lower,
    closed_form_degree,
    closed_form_forcing_bound,
    closed_form_golenia_an2,
    closed_form_weighted_degree,
    deficit_certificate,
    evaluate_terms,
    family_spec,
    generate,
    leading_behaviour,
    row_sizes,
    vertex_rows,
)
from sagraph.graph import weighted_degrees
from sagraph.models import VertexId

FAST = SolverConfig(certificate_horizon=2000)


@pytest.mark.parametrize(
    "j, expected", [(1, 1), (2, 2), (4, 2), (5, 3), (9, 3), (10, 4), (10**12, 10**6)]
)
def test_ceil_sqrt(j, expected):
    assert ceil_sqrt(j) == expected


def test_row_sizes(ex51, ex52):
    assert row_sizes(ex51, 10) == [1, 2, 2, 2, 3, 3, 3, 3, 3, 4]
    assert row_sizes(ex52, 4) == [1, 2, 3, 4]
    assert row_sizes(family_spec("path"), 3) == [1, 1, 1]


@pytest.mark.parametrize("alpha, beta", [(1.0, 0.5), (1.0, 0.6), (0.5, 0.7)])
def test_spine_degrees_match_closed_forms(alpha, beta):
    spec = family_spec("ex51", alpha, beta)
    rows = 30
    bundle = generate(spec, rows)
    graph = bundle.graph
    Deg = weighted_degrees(graph, ambient=True)
    for j in range(1, rows + 1):
        i = graph.index_of(VertexId.layered(j, 1))
        assert graph.ambient_degrees()[i] == closed_form_degree(spec, j)
        assert Deg[i] == pytest.approx(closed_form_weighted_degree(spec, j), rel=1e-12)


def test_ex52_degrees(ex52):
    bundle = generate(ex52, 10)
    graph = bundle.graph
    Deg = weighted_degrees(graph, ambient=True)
    for x, d, value in zip(graph.vertex_ids, graph.ambient_degrees(), Deg):
        assert d == closed_form_degree(ex52, x.row) == 2 * x.row
        assert value == pytest.approx(2 * math.sqrt(x.row))


def test_distance_lower_bound_value(ex51):
    expected = 2**-0.25 / (math.sqrt(3) * 0.25)
    assert closed_form_D_lower(ex51, 1) == pytest.approx(expected)
    assert closed_form_D_lower(ex51, 1) == pytest.approx(1.941967, rel=1e-6)


@pytest.mark.parametrize("n", [1, 2, 10, 1000])
def test_forcing_bound_is_half_inverse_square(ex51, n):
    D = closed_form_D_lower(ex51, n)
    assert closed_form_forcing_bound(ex51, n) == pytest.approx(0.5 / D**2)
    assert float(evaluate_terms(ex51.forcing.upper, float(n))) == pytest.approx(0.5 / D**2)


def test_complete_parameters_have_no_distance_bound():
    spec = family_spec("ex51", 0.5, 0.25)
    assert spec.forcing is None
    assert not spec.flags["incomplete"]
    with pytest.raises(FamilyParameterError, match="must exceed 3/4"):
        closed_form_D_lower(spec, 1)


def test_golenia_closed_form(ex52):
    assert closed_form_golenia_an2(ex52, 3, 1.0, 1.0) == pytest.approx(0.5)
    for n in range(1, 8):
        expected = 2.0 ** (2 * n - 2) / (4 ** (n - 1) * math.factorial(n - 1))
        assert closed_form_golenia_an2(ex52, n, 1.0, 1.0) == pytest.approx(expected)


@pytest.mark.parametrize(
    "alpha, beta, message",
    [
        (0.0, 0.5, "alpha must be positive"),
        (1.0, 0.75, "beta must lie in"),
        (1.0, -0.1, "beta must lie in"),
    ],
)
def test_ex51_parameter_range(alpha, beta, message):
    with pytest.raises(FamilyParameterError, match=message):
        family_spec("ex51", alpha, beta)


def test_generate_needs_a_row(ex52):
    with pytest.raises(FamilyParameterError):
        generate(ex52, 0)
    with pytest.raises(FamilyParameterError):
        family_spec("custom")


def test_potential_modes(ex52):
    rows = vertex_rows(generate(ex52, 4).graph)
    assert_allclose(generate(ex52, 4).potential(), -2 * np.sqrt(rows))
    assert_allclose(generate(ex52, 4, "opposite").potential(), 2 * np.sqrt(rows))
    assert_allclose(generate(ex52, 4, "zero").potential(), 0.0)


def test_truncation_records_frontier(ex51):
    bundle = generate(ex51, 5)
    assert bundle.rows == 5
    assert bundle.family == ex51
    # in the triangular family only the spine vertex of the last row reaches further
    assert bundle.frontier == [VertexId.layered(5, 1)]


def test_vertex_rows_need_layered_ids(two_vertex):
    with pytest.raises(FamilyParameterError, match="no row labels"):
        vertex_rows(two_vertex.graph)


def test_power_term_evaluation():
    assert_allclose(PowerTerm(coef=2.0, exponent=0.5).evaluate(np.array([1.0, 4.0])), [2.0, 4.0])
    assert_allclose(PowerTerm(coef=3.0, exponent=0.0, shift=-1.0).evaluate(np.array([1.0])), [3.0])
    assert PowerTerm(coef=1.0, exponent=1.0).negated().coef == -1.0


def test_leading_behaviour_with_shift():
    terms = [PowerTerm(coef=1.0, exponent=2.0, shift=1.0), PowerTerm(coef=-1.0, exponent=2.0)]
    exponent, coef = leading_behaviour(terms)
    assert exponent == pytest.approx(1.0)
    assert coef == pytest.approx(2.0)
    cancelling = [PowerTerm(coef=1.0, exponent=1.0), PowerTerm(coef=-1.0, exponent=1.0)]
    assert leading_behaviour(cancelling) is None


def test_deficit_bounded_when_support_dominates():
    certificate = deficit_certificate(
        [PowerTerm(coef=5.0, exponent=0.5)], [PowerTerm(coef=1.0, exponent=1.0)], config=FAST
    )
    assert certificate.bounded
    assert not certificate.unbounded
    assert certificate.leading_exponent == pytest.approx(1.0)
    # 5 sqrt(n) - n peaks at n = 6.25
    assert certificate.argmax_row in (6, 7)
    assert certificate.supremum == pytest.approx(max(5 * math.sqrt(n) - n for n in (6, 7)))


def test_deficit_unbounded_when_forcing_dominates():
    certificate = deficit_certificate(
        [PowerTerm(coef=1.0, exponent=1.0)], [PowerTerm(coef=0.5, exponent=0.5)], config=FAST
    )
    assert certificate.unbounded
    assert not certificate.bounded
    assert certificate.argmax_row == FAST.certificate_horizon


def test_deficit_of_cancelling_terms_is_bounded():
    term = PowerTerm(coef=1.0, exponent=1.0)
    certificate = deficit_certificate([term], [term], config=FAST)
    assert certificate.bounded
    assert certificate.supremum == pytest.approx(0.0)



def test_deficit_rising_to_the_horizon_is_not_attained():
    # -1/n is bounded by 0 but increases on every row
    certificate = deficit_certificate([PowerTerm(coef=-1.0, exponent=-1.0)], [], config=FAST)
    assert certificate.bounded
    assert certificate.argmax_row == FAST.certificate_horizon
    assert not certificate.supremum_attained

    peaked = deficit_certificate(
        [PowerTerm(coef=5.0, exponent=0.5)], [PowerTerm(coef=1.0, exponent=1.0)], config=FAST
    )
    assert peaked.supremum_attained
