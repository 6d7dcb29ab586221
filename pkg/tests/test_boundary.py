import math

import numpy as np
import pytest
from scipy.special import zeta

from sagraph.boundary import (
    FRONTIER_ASSUMPTION,
    bundle_distance_bounds,
    completeness_verdict,
    family_tail_bounds,
    frontier_distances,
    tail_power_sum_bounds,
    truncation_distance_bounds,
)
from sagraph.errors import DivergentTailError, TruncationTooSmallError
from sagraph.families import closed_form_D_lower, family_spec, generate
from sagraph.metrics import bundle_lengths
from sagraph.models import Completeness, VertexId


def test_tail_bounds_from_one():
    lower, upper = tail_power_sum_bounds(1.5, 1)
    assert lower == pytest.approx(2 * 2**-0.5)
    assert lower <= zeta(1.5) - 1.0 <= upper


@pytest.mark.parametrize("p", [1.1, 1.25, 1.5, 2.0, 3.0])
def test_tail_bounds_bracket_zeta(p):
    lower, upper = tail_power_sum_bounds(p, 1)
    assert lower <= zeta(p) - 1.0 <= upper


@pytest.mark.parametrize("p, n", [(1.1, 7), (1.25, 1), (2.0, 5), (3.0, 40)])
def test_tail_bounds_bracket_hurwitz_tails(p, n):
    # zeta(p, n + 1) = sum over j >= n of (j + 1)^-p
    lower, upper = tail_power_sum_bounds(p, n)
    assert lower <= zeta(p, n + 1) <= upper


def test_tail_bounds_reject_bad_input():
    with pytest.raises(DivergentTailError):
        tail_power_sum_bounds(1.0, 3)
    with pytest.raises(TruncationTooSmallError):
        tail_power_sum_bounds(1.5, 0)


def test_ex51_exponent_gives_distance_formula():
    # p = 5/4: lower tail sum from n is 4 (n+1)^(-1/4)
    lower, _ = tail_power_sum_bounds(1.25, 3)
    assert lower == pytest.approx(4 * 4**-0.25)
    spec = family_spec("ex51", 1.0, 0.5)
    assert lower / math.sqrt(3) == pytest.approx(closed_form_D_lower(spec, 3))


def test_completeness_verdicts(ex51, ex52):
    incomplete = completeness_verdict(ex51, "sigma")
    assert incomplete.verdict == Completeness.INCOMPLETE
    assert incomplete.exponent == pytest.approx(1.25)

    complete = completeness_verdict(ex52, "sigma_q")
    assert complete.verdict == Completeness.COMPLETE
    assert complete.exponent == pytest.approx(0.75)

    assert completeness_verdict(ex51, "sigma_q").verdict == Completeness.INCONCLUSIVE
    assert completeness_verdict(None).verdict == Completeness.INCONCLUSIVE


def test_complete_parameters_of_ex51():
    spec = family_spec("ex51", 0.5, 0.25)
    assert completeness_verdict(spec).verdict == Completeness.COMPLETE


def test_family_tail_bounds(ex51, ex52):
    assert family_tail_bounds(None, 10) == (0.0, math.inf)
    assert family_tail_bounds(ex52, 10) == (math.inf, math.inf)
    lower, upper = family_tail_bounds(ex51, 10)
    assert 0 < lower < upper < math.inf


def test_spine_lower_bound_dominates_power_sum(ex51):
    rows = 50
    bundle = generate(ex51, rows)
    lower, upper = bundle_distance_bounds(bundle, bundle_lengths(bundle))
    tail_lb, _ = family_tail_bounds(ex51, rows)
    graph = bundle.graph
    for n in (1, 5, 20, 49):
        i = graph.index_of(VertexId.layered(n, 1))
        j = np.arange(n, rows, dtype=float)
        expected = np.sum((j + 1) ** -1.25) / math.sqrt(3) + tail_lb
        assert lower[i] >= expected * (1 - 1e-12)
        assert lower[i] >= closed_form_D_lower(ex51, n) * (1 - 1e-12)
        assert lower[i] <= upper[i]


def test_bounds_from_nested_truncations_are_consistent(ex51):
    small = generate(ex51, 20)
    large = generate(ex51, 200)
    lo_s, up_s = bundle_distance_bounds(small, bundle_lengths(small))
    lo_l, up_l = bundle_distance_bounds(large, bundle_lengths(large))
    for n in range(1, 21):
        x = VertexId.layered(n, 1)
        i, k = small.graph.index_of(x), large.graph.index_of(x)
        assert lo_s[i] <= up_l[k] * (1 + 1e-12)
        assert lo_l[k] <= up_s[i] * (1 + 1e-12)
        # a longer truncation only adds certified distance
        assert lo_l[k] >= lo_s[i] * (1 - 1e-12)


def test_complete_family_has_infinite_distance(ex52):
    bundle = generate(ex52, 10)
    lower, upper = bundle_distance_bounds(bundle, bundle_lengths(bundle))
    assert np.all(np.isinf(lower))
    assert np.all(np.isinf(upper))


def test_truncation_distance_bounds(ex51):
    bundle = generate(ex51, 10)
    lengths = bundle_lengths(bundle)
    x = VertexId.layered(3, 1)
    bounds = truncation_distance_bounds(bundle.graph, lengths, x, bundle.frontier, 0.5, 2.0)
    near = frontier_distances(bundle.graph, lengths, bundle.frontier)[bundle.graph.index_of(x)]
    assert bounds.vertex == "x3_1"
    assert bounds.lower == pytest.approx(near + 0.5)
    assert bounds.upper == pytest.approx(near + 2.0)
    assert bounds.assumptions == [FRONTIER_ASSUMPTION]


def test_graph_without_frontier(path_bundle):
    lengths = bundle_lengths(path_bundle)
    assert np.all(np.isinf(frontier_distances(path_bundle.graph, lengths, [])))
    lower, upper = bundle_distance_bounds(path_bundle, lengths)
    assert np.all(np.isinf(lower)) and np.all(np.isinf(upper))
