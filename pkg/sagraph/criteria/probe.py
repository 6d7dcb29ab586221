"""Heuristic spectral probes on nested truncations of a family.

Nothing here proves or disproves self-adjointness; reports say so.
"""

import logging
import math

import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.errors import TruncationTooSmallError
from sagraph.families.generators import generate, vertex_rows
from sagraph.families.spec import LayeredFamilySpec, PotentialMode, ex52_spec
from sagraph.models.reports import ProbeReport
from sagraph.operators.assembly import assemble
from sagraph.operators.spectrum import lowest_eigenvalue

logger = logging.getLogger(__name__)

GAP_TOLERANCE = 1e-6


def spectral_stability_probe(
    spec: LayeredFamilySpec,
    rows: list[int],
    potential: PotentialMode = "family",
    config: SolverConfig | None = None,
) -> ProbeReport:
    """Lowest eigenvalue of each truncation with and without a frontier penalty.

    Both matrices use the ambient weighted degree. The penalized one adds
    `frontier_penalty` on frontier vertices. Solver failures propagate.
    """
    config = resolve(config)
    plain, penalized = [], []
    for n in rows:
        bundle = generate(spec, n, potential)
        penalty = np.zeros(bundle.graph.size)
        penalty[bundle.frontier_indices()] = config.frontier_penalty
        plain.append(lowest_eigenvalue(assemble(bundle, ambient=True), config))
        penalized.append(
            lowest_eigenvalue(assemble(bundle, ambient=True, extra_diagonal=penalty), config)
        )
        logger.info("rows %d: lambda_min %.6g, penalized %.6g", n, plain[-1], penalized[-1])

    gaps = [abs(b - a) for a, b in zip(plain, penalized)]
    insensitive = bool(gaps) and gaps[-1] <= GAP_TOLERANCE * max(1.0, abs(plain[-1]))
    return ProbeReport(
        rows=list(rows),
        lambda_plain=plain,
        lambda_penalized=penalized,
        gaps=gaps,
        boundary_insensitive=insensitive,
    )


def semiboundedness_witness(rows: int, spec: LayeredFamilySpec | None = None) -> float:
    """Rayleigh quotient of the indicator of rows ceil(N/2)..N-1 on an N-row truncation.

    For the complete-bipartite family with W = -2 sqrt(k) it is negative and
    decreases without bound in N.
    """
    spec = spec if spec is not None else ex52_spec()
    bundle = generate(spec, rows)
    op = assemble(bundle, ambient=True)
    row_of = vertex_rows(bundle.graph)
    f = ((row_of >= math.ceil(rows / 2)) & (row_of <= rows - 1)).astype(complex)
    norm2 = float(np.sum(op.mu * np.abs(f) ** 2))
    if norm2 == 0:
        raise TruncationTooSmallError(f"trial vector vanishes on {rows} rows; enlarge truncation")
    energy = np.sum(op.mu * np.conj(f) * (op.A @ f))
    return float(energy.real) / norm2
