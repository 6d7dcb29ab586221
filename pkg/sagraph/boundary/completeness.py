"""Metric completeness of layered families from certified spine exponents."""

from sagraph.families.spec import LayeredFamilySpec, LengthKind
from sagraph.models.reports import Completeness, CompletenessVerdict


def completeness_verdict(
    family: LayeredFamilySpec | None, kind: LengthKind = "sigma"
) -> CompletenessVerdict:
    """Completeness of (V, d) for sigma or sigma_q from the spine-step certificate.

    Spine steps ~ c j^-p: p > 1 with a geodesic spine gives a finite escape path
    (incomplete); p <= 1 with every escape path dominating the spine gives
    divergent lengths (complete). Anything else is inconclusive.
    """
    step = family.steps.get(kind) if family is not None else None
    if step is None:
        return CompletenessVerdict(
            verdict=Completeness.INCONCLUSIVE, evidence=f"no step certificate for {kind}"
        )
    p = step.exponent
    if p > 1 and step.spine_geodesic:
        return CompletenessVerdict(
            verdict=Completeness.INCOMPLETE,
            exponent=p,
            evidence=f"geodesic spine with summable steps ~ (j+1)^-{p:g}",
        )
    if p <= 1 and step.escape_bounded_by_spine:
        return CompletenessVerdict(
            verdict=Completeness.COMPLETE,
            exponent=p,
            evidence=f"every escape path has steps >= {step.lower_coef:g} (j+1)^-{p:g}, divergent",
        )
    return CompletenessVerdict(
        verdict=Completeness.INCONCLUSIVE,
        exponent=p,
        evidence="step exponent without a matching path certificate",
    )
