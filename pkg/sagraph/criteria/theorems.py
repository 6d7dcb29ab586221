"""Checkers for the distance-to-boundary and rescaled-metric self-adjointness criteria.

Every checker evaluates its hypotheses exhaustively on the given finite graph
and, for truncations of built-in families, tries to extend them to all rows
with the family's asymptotic certificates. Without such a certificate a
truncation can at best be VerifiedUpToTruncation.
"""

import logging
import math
from typing import Optional

import numpy as np

from sagraph.boundary.completeness import completeness_verdict
from sagraph.boundary.distance import FRONTIER_ASSUMPTION, bundle_distance_bounds
from sagraph.config import SolverConfig, resolve
from sagraph.covering.cells import evaluate_covering, effective_potential
from sagraph.covering.triangles import triangle_covering
from sagraph.errors import CoveringError, FamilyShapeError
from sagraph.families.asymptotics import PowerTerm, deficit_certificate, evaluate_terms
from sagraph.families.generators import family_q, vertex_rows
from sagraph.families.spec import LayeredFamilySpec
from sagraph.metrics.lengths import (
    bundle_lengths,
    check_intrinsic,
    check_strongly_intrinsic,
    lipschitz_constant,
)
from sagraph.models.covering import GoodCovering
from sagraph.models.graph import EdgeLengthAssignment, GraphBundle, PotentialAssignment
from sagraph.models.reports import (
    Completeness,
    Criterion,
    CriterionReport,
    Verdict,
    Witness,
)

logger = logging.getLogger(__name__)

POTENTIAL_MODES = ("family", "zero", "opposite")


def certified_potential_terms(
    bundle: GraphBundle, terms: Optional[list[PowerTerm]] = None
) -> Optional[list[PowerTerm]]:
    """Row formula of W that reproduces the bundle's potential, if any.

    Explicit `terms` are checked as given; otherwise the family's own potential,
    zero and the negated family potential are tried in turn.
    """
    spec: Optional[LayeredFamilySpec] = bundle.family
    if spec is None:
        return None
    rows = vertex_rows(bundle.graph).astype(float)
    W = bundle.potential()
    if terms is not None:
        candidates = [terms]
    else:
        candidates = [spec.potential_terms(m) for m in POTENTIAL_MODES]
    for candidate in candidates:
        expected = evaluate_terms(candidate, rows) if candidate else np.zeros_like(rows)
        if np.allclose(expected, W, rtol=1e-12, atol=1e-12):
            return candidate
    return None


def _forcing(distance: np.ndarray) -> np.ndarray:
    """1/(2 D^2), zero where D is infinite."""
    with np.errstate(divide="ignore"):
        return np.where(np.isinf(distance), 0.0, 0.5 / distance**2)


def _check_against_distance(
    bundle: GraphBundle,
    lengths: EdgeLengthAssignment,
    family_lengths: bool,
    support: np.ndarray,
    support_terms: Optional[list[PowerTerm]],
    fail_terms: Optional[list[PowerTerm]],
    C: Optional[float],
    config: SolverConfig,
    report: CriterionReport,
) -> CriterionReport:
    """Shared core: support(x) + C >= 1/(2 D(x)^2) with D bounded from the truncation.

    `support` is W (or W_e + W) on the graph; `support_terms` a certified row
    minorant of it, `fail_terms` a certified row majorant used to prove failure.
    """
    graph = bundle.graph
    ids = graph.vertex_ids
    spec = bundle.family

    intrinsic = check_intrinsic(graph, lengths, config)
    report.checks["intrinsic"] = intrinsic.passes
    report.constants["intrinsic_max_ratio"] = intrinsic.max_ratio
    if not intrinsic.passes:
        report.verdict = Verdict.FAIL
        report.witnesses.append(
            Witness(
                description="edge lengths are not intrinsic",
                vertex=intrinsic.worst_vertex,
                value=intrinsic.max_ratio,
            )
        )
        return report

    if not bundle.is_truncation:
        report.verdict = Verdict.INCONCLUSIVE
        report.notes.append(
            "criterion requires a metrically incomplete graph; finite graphs are complete"
        )
        return report

    completeness = completeness_verdict(spec if family_lengths else None, "sigma")
    report.checks["incomplete"] = completeness.verdict == Completeness.INCOMPLETE
    report.notes.append(f"completeness: {completeness.verdict.value} ({completeness.evidence})")
    if completeness.verdict == Completeness.COMPLETE:
        report.verdict = Verdict.INCONCLUSIVE
        report.notes.append("criterion requires a metrically incomplete graph")
        return report

    D_lower, D_upper = bundle_distance_bounds(bundle, lengths, "sigma")
    report.notes.append(f"distance bounds assume: {FRONTIER_ASSUMPTION}")
    required = _forcing(D_lower) - support
    worst = int(np.argmax(required))
    C_truncation = float(required[worst])
    report.constants["C_truncation"] = C_truncation
    report.truncation_rows = bundle.rows

    # failure is only proven with the upper distance bound
    excess = _forcing(D_upper) - support
    target = C if C is not None else math.inf
    violated = np.flatnonzero(excess > target + config.inequality_slack)

    certificate = None
    if (
        spec is not None
        and family_lengths
        and spec.forcing is not None
        and completeness.verdict == Completeness.INCOMPLETE
    ):
        if support_terms is not None:
            certificate = deficit_certificate(spec.forcing.upper, support_terms, config=config)
            report.constants["certificate_leading_exponent"] = certificate.leading_exponent
            report.constants["certificate_leading_coef"] = certificate.leading_coef
        if fail_terms is not None:
            lower = deficit_certificate(spec.forcing.lower, fail_terms, config=config)
            if lower.unbounded:
                spine = [i for i, x in enumerate(ids) if x.index == 1]
                at = max(spine, key=lambda i: excess[i])
                report.verdict = Verdict.FAIL
                report.certificate = "unbounded-deficit"
                report.witnesses.append(
                    Witness(
                        description=(
                            "1/(2 D^2) - support grows like n^"
                            f"{lower.leading_exponent:g} along the spine; no constant C suffices"
                        ),
                        vertex=ids[at].label,
                        value=float(excess[at]),
                    )
                )
                report.constants["C"] = None
                return report

    if certificate is not None and certificate.bounded and not certificate.supremum_attained:
        report.notes.append(
            f"deficit still rising at row {certificate.horizon}; supremum not certified"
        )
    elif certificate is not None and certificate.bounded:
        C_certified = max(certificate.supremum, C_truncation)
        if C is None or C >= C_certified - config.inequality_slack:
            report.verdict = Verdict.PASS
            report.certificate = "power-law deficit bound"
            report.constants["C"] = C if C is not None else C_certified
            report.notes.append(
                f"deficit bounded over all rows (supremum {certificate.supremum:.6g} on rows "
                f"1..{certificate.horizon}, leading order n^{certificate.leading_exponent})"
            )
            return report
        report.notes.append(f"certified constant would be {C_certified:.6g}")

    if C is None:
        report.constants["C"] = C_truncation
        report.verdict = Verdict.VERIFIED_UP_TO_TRUNCATION
        return report

    report.constants["C"] = C
    if violated.size:
        at = int(violated[np.argmax(excess[violated])])
        report.verdict = Verdict.FAIL
        report.witnesses.append(
            Witness(
                description="support + C < 1/(2 D_upper^2)",
                vertex=ids[at].label,
                value=float(excess[at] - C),
            )
        )
    elif C >= C_truncation - config.inequality_slack:
        report.verdict = Verdict.VERIFIED_UP_TO_TRUNCATION
    else:
        report.verdict = Verdict.INCONCLUSIVE
        report.witnesses.append(
            Witness(
                description="inequality fails with the lower distance bound only",
                vertex=ids[worst].label,
                value=C_truncation - C,
            )
        )
    return report


def _finish(report: CriterionReport) -> CriterionReport:
    if report.constants.get("C") is not None:
        report.constants["lambda"] = -report.constants["C"] - 1.5
    logger.info("%s verdict: %s", report.criterion.value, report.verdict.value)
    return report


def theorem1_check(
    bundle: GraphBundle,
    lengths: Optional[EdgeLengthAssignment] = None,
    C: Optional[float] = None,
    potential_terms: Optional[list[PowerTerm]] = None,
    config: SolverConfig | None = None,
) -> CriterionReport:
    """Check W(x) >= 1/(2 D(x)^2) - C on a metrically incomplete graph.

    `C=None` searches for the smallest constant.
    """
    config = resolve(config)
    family_lengths = lengths is None and bundle.sigma is None
    lengths = lengths if lengths is not None else bundle_lengths(bundle)
    terms = certified_potential_terms(bundle, potential_terms)
    report = CriterionReport(criterion=Criterion.THM1, verdict=Verdict.INCONCLUSIVE)
    _check_against_distance(
        bundle,
        lengths,
        family_lengths,
        bundle.potential(),
        support_terms=terms,
        fail_terms=terms,
        C=C,
        config=config,
        report=report,
    )
    return _finish(report)


def theorem2_check(
    bundle: GraphBundle,
    lengths: Optional[EdgeLengthAssignment] = None,
    cover: Optional[GoodCovering] = None,
    C: Optional[float] = None,
    potential_terms: Optional[list[PowerTerm]] = None,
    config: SolverConfig | None = None,
) -> CriterionReport:
    """Check W_e(x) + W(x) >= 1/(2 D(x)^2) - C for a good covering.

    Without a covering the triangle covering of the layered graph is used; a
    bundle without phase then receives flux pi through every triangle.
    """
    config = resolve(config)
    report = CriterionReport(criterion=Criterion.THM2, verdict=Verdict.INCONCLUSIVE)
    if cover is None:
        try:
            cover, phase = triangle_covering(bundle)
        except FamilyShapeError as e:
            raise CoveringError(f"no covering given and none can be built: {e}") from e
        if bundle.theta.values is None:
            bundle = bundle.with_theta(phase)
            report.notes.append("phase set to flux pi through every triangle")

    family_lengths = lengths is None and bundle.sigma is None
    lengths = lengths if lengths is not None else bundle_lengths(bundle)
    graph = bundle.graph
    evaluated = evaluate_covering(graph, bundle.theta, cover, config)
    W_e = effective_potential(graph, bundle.theta, evaluated, config).array(graph)
    p_values = np.array([cell.p for cell in evaluated.cells])
    report.constants["m"] = evaluated.m
    report.constants["min_p"] = float(p_values.min()) if p_values.size else None
    report.checks["covering_valid"] = True

    terms = certified_potential_terms(bundle, potential_terms)
    support_terms = fail_terms = None
    spec = bundle.family
    if terms is not None and spec is not None:
        flux_free = not p_values.size or float(p_values.max()) <= config.inequality_slack
        if flux_free:
            support_terms = fail_terms = terms
            report.notes.append("all cells are flux-free: W_e vanishes")
        elif spec.effective_minorant is not None and float(p_values.min()) >= 1 - 1e-10:
            rows = vertex_rows(graph)
            interior = rows < (bundle.rows or rows.max())
            minorant = evaluate_terms(spec.effective_minorant, rows.astype(float))
            if np.all(W_e[interior] >= minorant[interior] - config.inequality_slack):
                support_terms = list(terms) + list(spec.effective_minorant)
                report.checks["effective_minorant"] = True
                report.notes.append("W_e bounded below by the family's row minorant")
            else:
                report.checks["effective_minorant"] = False

    _check_against_distance(
        bundle,
        lengths,
        family_lengths,
        W_e + bundle.potential(),
        support_terms=support_terms,
        fail_terms=fail_terms,
        C=C,
        config=config,
        report=report,
    )
    return _finish(report)


def theorem3_check(
    bundle: GraphBundle,
    lengths: Optional[EdgeLengthAssignment] = None,
    q: Optional[PotentialAssignment] = None,
    potential_terms: Optional[list[PowerTerm]] = None,
    config: SolverConfig | None = None,
) -> CriterionReport:
    """Check the rescaled-metric criterion: sigma strongly intrinsic, q >= 1,
    q^(-1/2) Lipschitz, W >= -q and (V, d_{sigma_q}) complete."""
    config = resolve(config)
    graph = bundle.graph
    ids = graph.vertex_ids
    spec: Optional[LayeredFamilySpec] = bundle.family
    report = CriterionReport(criterion=Criterion.THM3, verdict=Verdict.INCONCLUSIVE)
    report.truncation_rows = bundle.rows if bundle.is_truncation else None

    family_lengths = lengths is None and bundle.sigma is None and spec is not None
    lengths = lengths if lengths is not None else bundle_lengths(bundle)
    q_family = family_q(spec, graph) if spec is not None else None
    if q is None:
        q = q_family if q_family is not None else PotentialAssignment.constant(graph, 1.0)
    q_values = q.array(graph)
    q_is_family = q_family is not None and np.allclose(q_values, q_family.array(graph))

    strong = check_strongly_intrinsic(graph, lengths, config)
    report.checks["strongly_intrinsic"] = strong.passes
    if not strong.passes:
        report.witnesses.append(
            Witness(
                description="edge lengths are not strongly intrinsic",
                vertex=strong.worst_vertex,
                value=strong.max_ratio,
            )
        )

    low = int(np.argmin(q_values)) if q_values.size else 0
    report.checks["q_at_least_one"] = bool(not q_values.size or q_values[low] >= 1.0)
    if not report.checks["q_at_least_one"]:
        report.witnesses.append(
            Witness(description="q below one", vertex=ids[low].label, value=float(q_values[low]))
        )
        report.verdict = Verdict.FAIL
        return _finish(report)

    K = lipschitz_constant(graph, lengths, q_values**-0.5)
    report.constants["K"] = K
    report.checks["lipschitz"] = math.isfinite(K)

    W = bundle.potential()
    gap = W + q_values
    worst = int(np.argmin(gap)) if gap.size else 0
    report.checks["W_at_least_minus_q"] = bool(
        not gap.size or gap[worst] >= -config.inequality_slack
    )
    if not report.checks["W_at_least_minus_q"]:
        report.witnesses.append(
            Witness(description="W(x) < -q(x)", vertex=ids[worst].label, value=float(gap[worst]))
        )

    if not all(report.checks.values()):
        report.verdict = Verdict.FAIL
        return _finish(report)

    if not bundle.is_truncation:
        report.checks["complete"] = True
        report.verdict = Verdict.PASS
        report.certificate = "finite graph, exhaustive check"
        return _finish(report)

    if q_is_family:
        kind, q_terms, K_bound = "sigma_q", spec.q, spec.lipschitz_bound
    elif np.allclose(q_values, 1.0):
        # q = 1 makes sigma_q = sigma and q^(-1/2) constant
        kind, q_terms, K_bound = "sigma", [PowerTerm(coef=1.0, exponent=0.0)], 0.0
    else:
        kind, q_terms, K_bound = "sigma_q", None, None

    completeness = completeness_verdict(spec if family_lengths else None, kind)
    report.checks["complete"] = completeness.verdict == Completeness.COMPLETE
    report.notes.append(
        f"completeness of sigma_q: {completeness.verdict.value} ({completeness.evidence})"
    )
    if completeness.verdict == Completeness.INCOMPLETE:
        report.verdict = Verdict.INCONCLUSIVE
        report.notes.append("criterion requires (V, d_sigma_q) to be complete")
        return _finish(report)

    certified = report.checks["complete"]
    terms = certified_potential_terms(bundle, potential_terms)
    if certified and terms is not None and q_terms is not None:
        bound = deficit_certificate([term.negated() for term in q_terms], terms, config=config)
        certified = (
            (bound.leading_coef is None or bound.leading_coef < 0)
            and (bound.supremum_attained or bound.leading_coef is None)
            and bound.supremum <= config.inequality_slack
        )
        report.checks["W_certificate"] = certified
    else:
        certified = False

    if certified and K_bound is not None:
        report.constants["K_certified"] = max(K_bound, K)
    else:
        certified = False

    if certified:
        report.verdict = Verdict.PASS
        report.certificate = "family completeness and power-law potential bound"
    else:
        report.verdict = Verdict.VERIFIED_UP_TO_TRUNCATION
    return _finish(report)
