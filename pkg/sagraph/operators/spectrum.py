"""Eigenvalues of assembled operators."""

import logging

import numpy as np
import scipy.linalg
import scipy.sparse.linalg
from scipy.sparse.linalg import ArpackNoConvergence

from sagraph.config import SolverConfig, resolve
from sagraph.errors import SpectralError
from sagraph.models.graph import GraphBundle
from sagraph.models.reports import SpectralResult
from sagraph.operators.assembly import OperatorMatrix, assemble

logger = logging.getLogger(__name__)


def _residual(S, eigenvalues: np.ndarray, vectors: np.ndarray) -> float:
    if not eigenvalues.size:
        return 0.0
    defect = S @ vectors - vectors * eigenvalues
    return float(np.max(np.linalg.norm(defect, axis=0) / np.linalg.norm(vectors, axis=0)))


def spectrum(
    op: OperatorMatrix,
    config: SolverConfig | None = None,
    k: int | None = None,
) -> SpectralResult:
    """Eigenvalues of H in ascending order.

    Matrices up to `dense_limit` are solved in full; larger ones return the `k`
    lowest eigenvalues (6 by default) from the Lanczos solver. Eigenvectors are
    returned mu-orthonormal, i.e. as eigenvectors of A.
    """
    config = resolve(config)
    n = op.size
    sqrt_mu = np.sqrt(op.mu)

    if n <= config.dense_limit:
        eigenvalues, vectors = scipy.linalg.eigh(op.S.toarray())
        solver, complete = "dense", True
    else:
        count = min(k or 6, n - 1)
        v0 = np.ones(n, dtype=complex) / np.sqrt(n)
        try:
            eigenvalues, vectors = scipy.sparse.linalg.eigsh(
                op.S, k=count, which="SA", v0=v0, maxiter=config.eigsh_maxiter
            )
        except ArpackNoConvergence as e:
            raise SpectralError(
                "Lanczos solver did not converge", iterations=config.eigsh_maxiter
            ) from e
        order = np.argsort(eigenvalues)
        eigenvalues, vectors = eigenvalues[order], vectors[:, order]
        solver, complete = "lanczos", False

    residual = _residual(op.S, eigenvalues, vectors)
    if complete:
        radius = float(np.max(np.abs(eigenvalues))) if n else 0.0
    else:
        # Gershgorin bound; only the lowest eigenvalues are known
        radius = float(abs(op.S).sum(axis=1).max())
    if residual > config.residual_rtol * (radius + 1.0):
        raise SpectralError(
            f"{solver} eigenpairs have residual {residual:.3e} above "
            f"{config.residual_rtol:g} * (spectral radius {radius:.6g} + 1)"
        )
    logger.debug("%s spectrum of size %d, residual %.3e", solver, n, residual)
    return SpectralResult(
        eigenvalues=[float(value) for value in eigenvalues],
        eigenvectors=vectors / sqrt_mu[:, None],
        residual=residual,
        solver=solver,
        complete=complete,
        min_mu=float(op.mu.min()) if n else None,
    )


def lowest_eigenvalue(op: OperatorMatrix, config: SolverConfig | None = None) -> float:
    return spectrum(op, config, k=1).lowest


def bundle_spectrum(bundle: GraphBundle, config: SolverConfig | None = None) -> SpectralResult:
    """Spectrum of H for a bundle."""
    return spectrum(assemble(bundle), config)


def ground_state(
    bundle: GraphBundle, config: SolverConfig | None = None
) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue and a mu-normalized eigenvector of H."""
    result = spectrum(assemble(bundle), config, k=1)
    return result.lowest, result.eigenvectors[:, 0]
