"""Two-sided evaluation of the identities and inequalities behind the criteria.

Sums written over x, y in V run over ordered pairs of adjacent vertices, so
every edge contributes twice, with theta(y, x) = -theta(x, y).
"""

import logging

import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.metrics.lengths import check_strongly_intrinsic, lipschitz_constant
from sagraph.models.graph import EdgeLengthAssignment, GraphBundle, PotentialAssignment
from sagraph.models.reports import IdentityCheckResult
from sagraph.operators.assembly import (
    apply,
    assemble,
    edge_differences,
    edge_factors,
    graph_energy_q,
)
from sagraph.operators.spectrum import ground_state
from sagraph.operators.vectors import VectorLike, as_array, inner, norm

logger = logging.getLogger(__name__)

IMAGINARY_TOLERANCE = 1e-10


def compare(
    name: str,
    lhs: complex,
    rhs: complex,
    config: SolverConfig | None = None,
    scale: float = 0.0,
) -> IdentityCheckResult:
    """lhs == rhs within identity_rtol relative to max(|lhs|, |rhs|, scale) or identity_atol."""
    config = resolve(config)
    imag = max(abs(complex(lhs).imag), abs(complex(rhs).imag))
    lhs, rhs = complex(lhs).real, complex(rhs).real
    abs_err = abs(lhs - rhs)
    denominator = max(abs(lhs), abs(rhs), scale)
    rel_err = abs_err / denominator if denominator > 0 else 0.0
    passes = rel_err <= config.identity_rtol or abs_err <= config.identity_atol
    if not passes:
        logger.debug("%s: lhs %.17g, rhs %.17g, rel_err %.3e", name, lhs, rhs, rel_err)
    return IdentityCheckResult(
        name=name,
        lhs=lhs,
        rhs=rhs,
        abs_err=abs_err,
        rel_err=rel_err,
        passes=passes,
        imag_residual=imag,
    )


def compare_at_most(
    name: str,
    lhs: float,
    rhs: float,
    config: SolverConfig | None = None,
    scale: float = 0.0,
) -> IdentityCheckResult:
    """lhs <= rhs up to inequality_slack; `slack` is rhs - lhs.

    The excess is made relative to max(|lhs|, |rhs|, scale); pass the natural size of
    the compared quantities as `scale` when rhs may be zero.
    """
    config = resolve(config)
    excess = max(0.0, lhs - rhs)
    denominator = max(abs(lhs), abs(rhs), scale)
    return IdentityCheckResult(
        name=name,
        lhs=lhs,
        rhs=rhs,
        abs_err=excess,
        rel_err=excess / denominator if denominator > 0 else 0.0,
        passes=lhs <= rhs + config.inequality_slack,
        slack=rhs - lhs,
    )


def _not_applicable(name: str, reasons: list[str]) -> IdentityCheckResult:
    return IdentityCheckResult(
        name=name,
        lhs=0.0,
        rhs=0.0,
        abs_err=0.0,
        rel_err=0.0,
        passes=True,
        applicable=False,
        notes=reasons,
    )


def verify_lemma21(
    bundle: GraphBundle, f: np.ndarray, config: SolverConfig | None = None
) -> IdentityCheckResult:
    """(f v, (H - l)(f v)) against 1/2 sum b Re[e^{-i theta} v(x) conj v(y)] (f(x) - f(y))^2.

    (l, v) is the lowest eigenpair of H, so v solves (H - l) v = 0.
    """
    config = resolve(config)
    graph = bundle.graph
    f = np.asarray(f, dtype=float)
    lam, v = ground_state(bundle, config)
    fv = f * v
    lhs = inner(graph, apply(bundle, fv).values - lam * fv, fv)

    i, j, b, phase = edge_factors(bundle)
    cross = np.real(np.conj(phase) * v[i] * np.conj(v[j]))
    # both orientations of an edge give the same real part
    rhs = np.sum(b * cross * (f[i] - f[j]) ** 2)
    scale = float(np.sum(b * np.abs(v[i]) * np.abs(v[j]) * (f[i] - f[j]) ** 2))
    return compare("lemma21", lhs, rhs, config, scale=scale)


def _I_squared(bundle: GraphBundle, u: np.ndarray, phi: np.ndarray) -> float:
    i, j, b, _ = edge_factors(bundle)
    diff = np.abs(edge_differences(bundle, u)) ** 2
    return float(2.0 * np.sum(b * diff * (phi[i] ** 2 + phi[j] ** 2)))


def verify_prop41_identity(
    bundle: GraphBundle,
    u: VectorLike,
    phi: np.ndarray,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """I^2 = 4(phi^2 H u, u) - 4(phi^2 W u, u) + sum b (e^{i theta} u(y) - u(x))
    (e^{-i theta} conj u(y) + conj u(x)) (phi(x)^2 - phi(y)^2)."""
    config = resolve(config)
    graph = bundle.graph
    u = as_array(graph, u)
    phi = np.asarray(phi, dtype=float)
    phi2 = phi**2

    lhs = _I_squared(bundle, u, phi)
    Hu = apply(bundle, u).values
    W = bundle.potential()
    rhs = 4 * inner(graph, phi2 * Hu, u) - 4 * inner(graph, phi2 * W * u, u)

    i, j, b, phase = edge_factors(bundle)
    forward = (phase * u[j] - u[i]) * (np.conj(phase) * np.conj(u[j]) + np.conj(u[i]))
    backward = (np.conj(phase) * u[i] - u[j]) * (phase * np.conj(u[i]) + np.conj(u[j]))
    rhs = rhs + np.sum(b * (forward - backward) * (phi2[i] - phi2[j]))

    result = compare("prop41_identity", lhs, rhs, config, scale=abs(lhs))
    if result.imag_residual > IMAGINARY_TOLERANCE * max(1.0, abs(lhs)):
        result.passes = False
        result.notes.append(f"right-hand side not real: {result.imag_residual:.3e}")
    return result


def verify_prop41_intermediate(
    bundle: GraphBundle,
    q: PotentialAssignment,
    u: VectorLike,
    phi: np.ndarray,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """I^2 <= 4|(phi^2 H u, u)| + 4(phi^2 q u, u)
    + sqrt(2) I (sum b (phi(x) - phi(y))^2 |u(x) + e^{i theta} u(y)|^2)^(1/2), given W >= -q."""
    config = resolve(config)
    graph = bundle.graph
    u = as_array(graph, u)
    phi = np.asarray(phi, dtype=float)
    q_values = q.array(graph) if q.values is not None else np.ones(graph.size)
    if np.any(bundle.potential() < -q_values - config.inequality_slack):
        return _not_applicable("prop41_intermediate", ["W >= -q does not hold"])

    I2 = _I_squared(bundle, u, phi)
    phi2 = phi**2
    first = 4 * abs(inner(graph, phi2 * apply(bundle, u).values, u))
    second = 4 * inner(graph, phi2 * q_values * u, u).real
    i, j, b, phase = edge_factors(bundle)
    sums = np.abs(u[i] + phase * u[j]) ** 2
    cross = 2.0 * np.sum(b * (phi[i] - phi[j]) ** 2 * sums)
    rhs = first + second + np.sqrt(2.0) * np.sqrt(I2) * np.sqrt(cross)
    return compare_at_most("prop41_intermediate", I2, float(rhs), config)


def verify_prop41_bound(
    bundle: GraphBundle,
    sigma: EdgeLengthAssignment,
    q: PotentialAssignment,
    u: VectorLike,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """T_u^2 <= 4(||Hu|| ||u|| + (K^2 + 1) ||u||^2) with K the Lipschitz constant of q^(-1/2).

    Unmet preconditions make the result inapplicable rather than failing.
    """
    config = resolve(config)
    graph = bundle.graph
    u = as_array(graph, u)
    q_values = q.array(graph) if q.values is not None else np.ones(graph.size)

    reasons = []
    if not check_strongly_intrinsic(graph, sigma, config).passes:
        reasons.append("sigma is not strongly intrinsic")
    if np.any(q_values < 1.0):
        reasons.append("q < 1 somewhere")
    if np.any(bundle.potential() < -q_values - config.inequality_slack):
        reasons.append("W >= -q does not hold")
    if reasons:
        return _not_applicable("prop41_bound", reasons)

    K = lipschitz_constant(graph, sigma, q_values**-0.5)
    T = graph_energy_q(bundle, PotentialAssignment(values=q_values), u)
    u_norm = norm(graph, u)
    rhs = 4 * (norm(graph, apply(bundle, u)) * u_norm + (K**2 + 1) * u_norm**2)
    result = compare_at_most("prop41_bound", T**2, rhs, config)
    result.notes.append(f"K = {K:.6g}")
    return result


def verify_theorem1_lower_bound(
    bundle: GraphBundle,
    d_lower: np.ndarray,
    C: float,
    u: VectorLike,
    config: SolverConfig | None = None,
) -> IdentityCheckResult:
    """(u, (H - l) u) >= 1/2 sum max(1/D^2, 1) mu |u|^2 + ||u||^2 at l = -C - 3/2.

    H is the compression of the full operator, so truncations are supported
    when u lives on the truncation.
    """
    config = resolve(config)
    graph = bundle.graph
    u = as_array(graph, u)
    lam = -C - 1.5
    op = assemble(bundle, ambient=bundle.is_truncation)
    lhs = float(np.real(np.sum(graph.mu * np.conj(u) * (op.A @ u)))) - lam * norm(graph, u) ** 2
    with np.errstate(divide="ignore"):
        weight = np.maximum(1.0 / np.asarray(d_lower, dtype=float) ** 2, 1.0)
    rhs = 0.5 * float(np.sum(weight * graph.mu * np.abs(u) ** 2)) + norm(graph, u) ** 2
    return compare_at_most("theorem1_lower_bound", rhs, lhs, config)
