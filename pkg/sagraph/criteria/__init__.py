"""Self-adjointness criteria and heuristic probes."""

from sagraph.criteria.golenia import (
    classify_series,
    golenia_check,
    golenia_report,
    resolve_lambda,
    spine_path,
)
from sagraph.criteria.probe import semiboundedness_witness, spectral_stability_probe
from sagraph.criteria.theorems import (
    certified_potential_terms,
    theorem1_check,
    theorem2_check,
    theorem3_check,
)

__all__ = [
    "certified_potential_terms",
    "classify_series",
    "golenia_check",
    "golenia_report",
    "resolve_lambda",
    "semiboundedness_witness",
    "spectral_stability_probe",
    "spine_path",
    "theorem1_check",
    "theorem2_check",
    "theorem3_check",
]
