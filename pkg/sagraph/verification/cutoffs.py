"""Cut-off functions used by the criteria and checks of their properties."""

import logging

import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.errors import ParameterOrderError, QBelowOneError, TruncationTooSmallError
from sagraph.metrics.lengths import lipschitz_constant
from sagraph.metrics.paths import distances_from
from sagraph.models.graph import (
    EdgeLengthAssignment,
    GraphBundle,
    PotentialAssignment,
    VertexId,
)
from sagraph.models.reports import IdentityCheckResult
from sagraph.verification.identities import compare_at_most

logger = logging.getLogger(__name__)


def _check_order(eps: float, rho: float, R: float) -> None:
    if not (0 < eps < rho < 0.5 and 1 < R):
        raise ParameterOrderError(
            f"need 0 < eps < rho < 1/2 and R > 1 (got eps={eps}, rho={rho}, R={R})"
        )


def cutoff_F(s: np.ndarray | float, eps: float, rho: float, R: float) -> np.ndarray:
    """The continuous piecewise affine F_eps: 0, ramp to rho, identity, 1, ramp down, 0."""
    _check_order(eps, rho, R)
    knots = [0.0, eps, rho, 1.0, R, R + 1.0]
    values = [0.0, 0.0, rho, 1.0, 1.0, 0.0]
    return np.interp(np.asarray(s, dtype=float), knots, values, right=0.0)


def _cutoff_F_cases(s: np.ndarray, eps: float, rho: float, R: float) -> np.ndarray:
    conditions = [
        s <= eps,
        s <= rho,
        s <= 1.0,
        s <= R,
        s <= R + 1.0,
    ]
    choices = [
        np.zeros_like(s),
        rho * (s - eps) / (rho - eps),
        s,
        np.ones_like(s),
        R + 1.0 - s,
    ]
    return np.select(conditions, choices, default=0.0)


def verify_cutoff_F(
    eps: float,
    rho: float,
    R: float,
    samples: int = 10_000,
    seed: int | None = None,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """Compare F_eps with its case definition and check it is rho/(rho - eps)-Lipschitz.

    lhs is the largest slope over random sample pairs, rhs the Lipschitz bound.
    """
    config = resolve(config)
    _check_order(eps, rho, R)
    rng = np.random.default_rng(config.seed if seed is None else seed)
    s = rng.uniform(0.0, R + 2.0, size=samples)
    grid = np.concatenate([s, [0.0, eps, rho, 1.0, R, R + 1.0, R + 2.0]])
    F = cutoff_F(grid, eps, rho, R)
    mismatch = float(np.max(np.abs(F - _cutoff_F_cases(grid, eps, rho, R))))

    t = rng.uniform(0.0, R + 2.0, size=samples)
    apart = np.abs(s - t) > 1e-12
    slopes = np.abs(F[:samples] - cutoff_F(t, eps, rho, R))[apart] / np.abs(s - t)[apart]
    bound = rho / (rho - eps)
    result = compare_at_most("cutoff_F", float(slopes.max(initial=0.0)), bound, config)
    if mismatch > config.identity_atol:
        result.passes = False
        result.notes.append(f"differs from its case definition by {mismatch:.3e}")
    return result


def chi_n(distances: np.ndarray, n: float) -> np.ndarray:
    """chi_n = ((2n - d) / n v 0) ^ 1 for distances d from the base vertex."""
    return np.clip((2.0 * n - distances) / n, 0.0, 1.0)


def phi_n(distances: np.ndarray, n: float, q: np.ndarray) -> np.ndarray:
    """phi_n = chi_n q^(-1/2); tends to q^(-1/2) pointwise as n grows."""
    return chi_n(distances, n) * np.asarray(q, dtype=float) ** -0.5


def _base_distances(
    bundle: GraphBundle, lengths: EdgeLengthAssignment, x0: VertexId, n: float
) -> np.ndarray:
    graph = bundle.graph
    d = distances_from(graph, lengths, [graph.index_of(x0)])
    if bundle.frontier:
        reach = float(d[bundle.frontier_indices()].min())
        if reach <= 2 * n:
            raise TruncationTooSmallError(
                f"ball of radius {2 * n:g} around {x0} meets the frontier at distance "
                f"{reach:.6g}; enlarge truncation"
            )
    return d


def verify_chi_n(
    bundle: GraphBundle,
    lengths: EdgeLengthAssignment,
    x0: VertexId,
    n: float,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """Check bounds, ball values and the edge Lipschitz property of chi_n around x0.

    lhs is max over edges of n |chi_n(x) - chi_n(y)| / sigma(x, y), rhs is 1.
    """
    config = resolve(config)
    graph = bundle.graph
    d = _base_distances(bundle, lengths, x0, n)

    chi = chi_n(d, n)
    notes = []
    if np.any((chi < 0) | (chi > 1)):
        notes.append("chi_n outside [0, 1]")
    if np.any(chi[d <= n] != 1.0):
        notes.append("chi_n != 1 on the ball of radius n")
    if np.any(chi[d > 2 * n] != 0.0):
        notes.append("chi_n != 0 outside the ball of radius 2n")

    u, v = graph.edge_u, graph.edge_v
    ratios = n * np.abs(chi[u] - chi[v]) / lengths.values if graph.edge_count else np.zeros(0)
    result = compare_at_most("chi_n", float(ratios.max(initial=0.0)), 1.0, config)
    if notes:
        result.passes = False
        result.notes.extend(notes)
    result.notes.append(f"support size {int(np.count_nonzero(chi))}")
    logger.debug("chi_%g around %s: %s", n, x0, result.notes)
    return result


def verify_phi_n(
    bundle: GraphBundle,
    lengths: EdgeLengthAssignment,
    q: PotentialAssignment,
    x0: VertexId,
    n: float,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """Check 0 <= phi_n <= q^(-1/2) <= 1, the support of phi_n and its edge slope.

    lhs is max over edges of |phi_n(x) - phi_n(y)| / sigma(x, y), rhs is 1/n + K with K
    the Lipschitz constant of q^(-1/2) for the same lengths.
    """
    config = resolve(config)
    graph = bundle.graph
    q_values = q.array(graph)
    if np.any(q_values < 1.0):
        raise QBelowOneError("phi_n needs q >= 1 on every vertex")
    d = _base_distances(bundle, lengths, x0, n)

    phi = phi_n(d, n, q_values)
    root = q_values**-0.5
    notes = []
    if np.any(phi < 0) or np.any(phi > root + config.identity_atol):
        notes.append("phi_n outside [0, q^(-1/2)]")
    if np.any(phi[d > 2 * n] != 0.0):
        notes.append("phi_n != 0 outside the ball of radius 2n")

    K = lipschitz_constant(graph, lengths, root)
    if graph.edge_count:
        slopes = np.abs(phi[graph.edge_u] - phi[graph.edge_v]) / lengths.values
    else:
        slopes = np.zeros(0)
    result = compare_at_most("phi_n", float(slopes.max(initial=0.0)), 1.0 / n + K, config)
    if notes:
        result.passes = False
        result.notes.extend(notes)
    result.notes.append(f"K = {K:.6g}")
    return result
