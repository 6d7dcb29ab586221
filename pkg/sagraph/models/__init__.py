"""Data models for sagraph."""

from sagraph.models.covering import CoveringCell, GoodCovering
from sagraph.models.graph import (
    Edge,
    EdgeLengthAssignment,
    GraphBundle,
    PhaseAssignment,
    PotentialAssignment,
    ValidationReport,
    Vertex,
    VertexId,
    WeightedGraph,
    wrap_angle,
    wrap_angles,
)
from sagraph.models.reports import (
    CellReport,
    CommandResult,
    Completeness,
    CompletenessVerdict,
    CoveringReport,
    Criterion,
    CriterionReport,
    DistanceBounds,
    GoleniaTrace,
    IdentityCheckResult,
    IntrinsicCheckResult,
    ProbeReport,
    RunManifest,
    SeriesClass,
    SpectralResult,
    SuiteSummary,
    Verdict,
    Witness,
)

__all__ = [
    "CellReport",
    "CommandResult",
    "Completeness",
    "CompletenessVerdict",
    "CoveringCell",
    "CoveringReport",
    "Criterion",
    "CriterionReport",
    "DistanceBounds",
    "Edge",
    "EdgeLengthAssignment",
    "GoleniaTrace",
    "GoodCovering",
    "GraphBundle",
    "IdentityCheckResult",
    "IntrinsicCheckResult",
    "PhaseAssignment",
    "PotentialAssignment",
    "ProbeReport",
    "RunManifest",
    "SeriesClass",
    "SpectralResult",
    "SuiteSummary",
    "ValidationReport",
    "Verdict",
    "Vertex",
    "VertexId",
    "WeightedGraph",
    "Witness",
    "wrap_angle",
    "wrap_angles",
]
