"""Magnetic Laplacian and Schroedinger operator: assembly, application, forms."""

import logging

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from sagraph.errors import QBelowOneError
from sagraph.graph.core import weighted_degrees
from sagraph.models.graph import GraphBundle, PhaseAssignment, PotentialAssignment, wrap_angles
from sagraph.operators.vectors import MuVector, VectorLike, as_array

logger = logging.getLogger(__name__)


class OperatorMatrix(BaseModel):
    """H in two forms: A acting on functions, S = D^(1/2) A D^(-1/2) Hermitian.

    A[x][x] = Deg(x) + W(x), A[x][y] = -b(x, y) e^{i theta(x, y)} / mu(x);
    S[x][y] = -b(x, y) e^{i theta(x, y)} / sqrt(mu(x) mu(y)).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: sp.csr_matrix
    S: sp.csr_matrix
    mu: np.ndarray

    @property
    def size(self) -> int:
        return self.S.shape[0]


def edge_factors(bundle: GraphBundle) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    graph = bundle.graph
    keep = graph.edge_u != graph.edge_v
    i, j = graph.edge_u[keep], graph.edge_v[keep]
    phase = np.exp(1j * bundle.phases()[keep])
    return i, j, graph.edge_b[keep], phase


def assemble(
    bundle: GraphBundle,
    ambient: bool = False,
    extra_diagonal: np.ndarray | None = None,
) -> OperatorMatrix:
    """Assemble H = Delta_{b,mu;theta} + W.

    With `ambient`, the diagonal uses the weighted degree of the infinite family,
    which makes H the compression of the full operator to the truncation.
    `extra_diagonal` is added to W.
    """
    graph = bundle.graph
    n = graph.size
    mu = graph.mu
    diagonal = weighted_degrees(graph, ambient=ambient) + bundle.potential()
    if extra_diagonal is not None:
        diagonal = diagonal + extra_diagonal

    i, j, b, phase = edge_factors(bundle)
    s_upper = -b * phase / np.sqrt(mu[i] * mu[j])
    a_upper = -b * phase / mu[i]
    a_lower = -b * np.conj(phase) / mu[j]

    index = np.arange(n)
    rows = np.concatenate([index, i, j])
    cols = np.concatenate([index, j, i])
    S = sp.coo_matrix(
        (np.concatenate([diagonal.astype(complex), s_upper, np.conj(s_upper)]), (rows, cols)),
        shape=(n, n),
    ).tocsr()
    A = sp.coo_matrix(
        (np.concatenate([diagonal.astype(complex), a_upper, a_lower]), (rows, cols)),
        shape=(n, n),
    ).tocsr()
    logger.debug("assembled operator of size %d with %d edges", n, i.size)
    return OperatorMatrix(A=A, S=S, mu=mu)


def apply(bundle: GraphBundle, u: VectorLike) -> MuVector:
    """(Hu)(x) = (1/mu(x)) sum_y b(x, y)(u(x) - e^{i theta(x, y)} u(y)) + W(x) u(x)."""
    graph = bundle.graph
    values = as_array(graph, u)
    i, j, b, phase = edge_factors(bundle)

    result = np.zeros(graph.size, dtype=complex)
    np.add.at(result, i, b * (values[i] - phase * values[j]))
    np.add.at(result, j, b * (values[j] - np.conj(phase) * values[i]))
    result = result / graph.mu + bundle.potential() * values
    return MuVector(values=result)


def edge_differences(bundle: GraphBundle, u: VectorLike) -> np.ndarray:
    """u(x) - e^{i theta(x, y)} u(y) on every canonical edge (x, y)."""
    values = as_array(bundle.graph, u)
    i, j, _, phase = edge_factors(bundle)
    return values[i] - phase * values[j]


def quadratic_form(bundle: GraphBundle, u: VectorLike) -> float:
    """(u, Hu) = sum over edges of b |u(x) - e^{i theta} u(y)|^2 + sum_x mu W |u|^2."""
    graph = bundle.graph
    values = as_array(graph, u)
    _, _, b, _ = edge_factors(bundle)
    kinetic = np.sum(b * np.abs(edge_differences(bundle, values)) ** 2)
    potential = np.sum(graph.mu * bundle.potential() * np.abs(values) ** 2)
    return float(kinetic + potential)


def graph_energy_q(bundle: GraphBundle, q: PotentialAssignment, u: VectorLike) -> float:
    """T_u, where T_u^2 sums b min{1/q(x), 1/q(y)} |u(x) - e^{i theta} u(y)|^2.

    The sum runs over ordered pairs.
    """
    graph = bundle.graph
    q_values = q.array(graph) if q.values is not None else np.ones(graph.size)
    below = np.flatnonzero(q_values < 1.0)
    if below.size:
        raise QBelowOneError(f"q below one at vertex {graph.vertices[below[0]].id}")

    i, j, b, _ = edge_factors(bundle)
    weight = b / np.maximum(q_values[i], q_values[j])
    # each unordered edge appears twice in the ordered-pair sum
    total = 2.0 * np.sum(weight * np.abs(edge_differences(bundle, u)) ** 2)
    return float(np.sqrt(total))


def gauge_transform(bundle: GraphBundle, tau: np.ndarray) -> GraphBundle:
    """theta'(x, y) = theta(x, y) + tau(y) - tau(x); b, mu and W unchanged."""
    graph = bundle.graph
    tau = np.asarray(tau, dtype=float)
    shifted = bundle.phases() + tau[graph.edge_v] - tau[graph.edge_u]
    return bundle.with_theta(PhaseAssignment(values=wrap_angles(shifted)))
