"""The path-product criterion: divergence of sum a_n^2 mu(y_n) along vertex paths.

Along a path y_1, y_2, ... with a_1 = 1 and

    a_{n+1} = a_n (delta / Deg(y_n) + |1 + (lambda + W(y_n)) / Deg(y_n)|)

the criterion needs sum a_n^2 mu(y_n) = inf for every path. A path along which
the series converges makes it inapplicable; it says nothing about the operator.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.errors import FamilyShapeError, GoleniaConditionError, InputError
from sagraph.graph.core import weighted_degrees
from sagraph.models.graph import GraphBundle, VertexId
from sagraph.models.reports import (
    Criterion,
    CriterionReport,
    GoleniaTrace,
    SeriesClass,
    Verdict,
    Witness,
)

logger = logging.getLogger(__name__)

LAMBDA_SHIFT = 1e-6
MIN_TAIL_TERMS = 4


def spine_path(bundle: GraphBundle) -> list[VertexId]:
    """x_{1,1}, x_{2,1}, ... of a layered graph, in row order."""
    spine = sorted(x for x in bundle.graph.vertex_ids if x.row is not None and x.index == 1)
    if not spine or [x.row for x in spine] != list(range(1, len(spine) + 1)):
        raise FamilyShapeError("graph has no spine x_{j,1} starting at row 1")
    return spine


def _resolve_path(
    bundle: GraphBundle, path: Sequence[VertexId] | str, n_max: Optional[int]
) -> list[int]:
    graph = bundle.graph
    vertices = spine_path(bundle) if isinstance(path, str) else list(path)
    if isinstance(path, str) and path != "spine":
        raise InputError(f"unknown path {path!r}; give 'spine' or a vertex sequence")
    if n_max is not None:
        vertices = vertices[:n_max]
    if not vertices:
        raise InputError("empty path")
    indices = [graph.index_of(x) for x in vertices]
    for i, j in zip(indices, indices[1:]):
        if graph.edge_index(i, j) is None:
            raise InputError(
                f"path is not a walk: {graph.vertex_ids[i]} and {graph.vertex_ids[j]} "
                "are not adjacent"
            )
    return indices


def _violations(shifted: np.ndarray, scale: np.ndarray) -> np.ndarray:
    return np.flatnonzero(np.abs(shifted) <= 1e-12 * np.maximum(scale, 1.0))


def resolve_lambda(
    bundle: GraphBundle, indices: list[int], lam: Optional[float] = None
) -> float:
    """lambda with lambda + Deg + W nonzero on the path.

    An explicit lambda that violates the condition raises; otherwise 0 is
    tried first and then a small positive shift.
    """
    Deg = weighted_degrees(bundle.graph, ambient=True)[indices]
    W = bundle.potential()[indices]
    scale = np.abs(Deg) + np.abs(W)
    if lam is not None:
        bad = _violations(lam + Deg + W, scale)
        if bad.size:
            raise GoleniaConditionError(bundle.graph.vertex_ids[indices[bad[0]]])
        return lam
    for candidate in (0.0, LAMBDA_SHIFT):
        if not _violations(candidate + Deg + W, scale).size:
            if candidate:
                logger.info("lambda = 0 violates the condition; using %g", candidate)
            return candidate
    bad = _violations(LAMBDA_SHIFT + Deg + W, scale)
    raise GoleniaConditionError(bundle.graph.vertex_ids[indices[bad[0]]])


def classify_series(log_terms: np.ndarray, config: SolverConfig | None = None) -> tuple[
    SeriesClass, Optional[float], Optional[float]
]:
    """Ratio test on the tail, falling back to Raabe's test when the ratio is near one.

    Returns the classification and the tail means of the ratio and of the Raabe
    quantity n (t_n / t_{n+1} - 1).
    """
    config = resolve(config)
    if log_terms.size < 2:
        return SeriesClass.INCONCLUSIVE, None, None
    steps = np.diff(log_terms)
    window = max(MIN_TAIL_TERMS, int(math.ceil(config.tail_window * steps.size)))
    if steps.size < MIN_TAIL_TERMS:
        return SeriesClass.INCONCLUSIVE, None, None
    tail = steps[-window:]
    n = np.arange(steps.size - tail.size + 1, steps.size + 1, dtype=float)
    margin = config.ratio_margin

    ratio = float(np.mean(np.exp(tail)))
    if ratio < 1 - margin:
        return SeriesClass.CONVERGES, ratio, None
    if ratio > 1 + margin:
        return SeriesClass.DIVERGES, ratio, None

    raabe = float(np.mean(n * np.expm1(-tail)))
    if raabe > 1 + margin:
        return SeriesClass.CONVERGES, ratio, raabe
    if raabe < 1 - margin:
        return SeriesClass.DIVERGES, ratio, raabe
    return SeriesClass.INCONCLUSIVE, ratio, raabe


def golenia_check(
    bundle: GraphBundle,
    delta: float = 1.0,
    lam: Optional[float] = None,
    path: Sequence[VertexId] | str = "spine",
    n_max: Optional[int] = None,
    config: SolverConfig | None = None,
) -> GoleniaTrace:
    """a_n and the partial sums of a_n^2 mu(y_n) along a path, with a classification.

    Deg uses the ambient weighted degree, so truncations of families see the
    degrees of the infinite graph.
    """
    config = resolve(config)
    if not delta > 0:
        raise InputError(f"delta must be positive (got {delta})")
    graph = bundle.graph
    indices = _resolve_path(bundle, path, n_max)
    lam = resolve_lambda(bundle, indices, lam)

    Deg = weighted_degrees(graph, ambient=True)[indices]
    W = bundle.potential()[indices]
    with np.errstate(divide="ignore"):
        factors = delta / Deg + np.abs(1.0 + (lam + W) / Deg)
    log_a = np.concatenate([[0.0], np.cumsum(np.log(factors[:-1]))])
    log_a2 = 2.0 * log_a
    log_terms = log_a2 + np.log(graph.mu[indices])
    log_partial = np.logaddexp.accumulate(log_terms)

    classification, ratio, raabe = classify_series(log_terms, config)
    ids = graph.vertex_ids
    logger.debug(
        "path of %d vertices from %s: %s (ratio %s, raabe %s)",
        len(indices),
        ids[indices[0]],
        classification.value,
        ratio,
        raabe,
    )
    with np.errstate(over="ignore"):
        return GoleniaTrace(
            path=[ids[i].label for i in indices],
            a=np.exp(log_a).tolist(),
            log_a2=log_a2.tolist(),
            partial_sums=np.exp(log_partial).tolist(),
            classification=classification,
            ratio_estimate=ratio,
            raabe_estimate=raabe,
            delta=delta,
            lam=lam,
        )


def golenia_report(
    bundle: GraphBundle,
    delta: float = 1.0,
    lam: Optional[float] = None,
    paths: Optional[list[Sequence[VertexId] | str]] = None,
    config: SolverConfig | None = None,
) -> CriterionReport:
    """Run the path criterion on the given paths (default: the spine).

    A convergent path makes the criterion inapplicable (Fail); divergence on
    every checked path is only VerifiedUpToTruncation since not every path is
    examined.
    """
    config = resolve(config)
    report = CriterionReport(criterion=Criterion.GOLENIA, verdict=Verdict.INCONCLUSIVE)
    report.constants["delta"] = delta
    traces = [golenia_check(bundle, delta, lam, path, config=config) for path in paths or ["spine"]]
    report.constants["lambda"] = traces[0].lam
    report.truncation_rows = bundle.rows

    classes = [trace.classification for trace in traces]
    for position, trace in enumerate(traces):
        report.checks[f"path_{position}_diverges"] = trace.classification == SeriesClass.DIVERGES
        if trace.classification == SeriesClass.CONVERGES:
            report.witnesses.append(
                Witness(
                    description=f"sum a_n^2 mu(y_n) converges along the path from {trace.path[0]}",
                    vertex=trace.path[-1],
                    value=trace.partial_sums[-1],
                )
            )

    if SeriesClass.CONVERGES in classes:
        report.verdict = Verdict.FAIL
        report.notes.append(
            "criterion not applicable: a convergent path exists; "
            "this does not decide self-adjointness"
        )
    elif all(c == SeriesClass.DIVERGES for c in classes):
        report.verdict = Verdict.VERIFIED_UP_TO_TRUNCATION
        report.notes.append("divergence checked on the given paths only")
    logger.info("%s verdict: %s", report.criterion.value, report.verdict.value)
    return report
