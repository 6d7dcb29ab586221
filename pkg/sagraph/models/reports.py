"""Result and report models produced by checks, solvers and the CLI."""

from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class ReportModel(BaseModel):
    """Base for serialized reports; non-finite floats become strings in JSON."""

    model_config = ConfigDict(ser_json_inf_nan="strings")


class Verdict(str, Enum):
    """Outcome of a self-adjointness criterion check."""

    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"
    VERIFIED_UP_TO_TRUNCATION = "VerifiedUpToTruncation"


class Criterion(str, Enum):
    THM1 = "Thm1"
    THM2 = "Thm2"
    THM3 = "Thm3"
    GOLENIA = "Golenia"


class Completeness(str, Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    INCONCLUSIVE = "Inconclusive"


class SeriesClass(str, Enum):
    """Classification of sum a_n^2 mu(y_n) along a path."""

    DIVERGES = "Diverges"
    CONVERGES = "Converges"
    INCONCLUSIVE = "Inconclusive"


class IntrinsicCheckResult(ReportModel):
    """Worst-case value of (1/mu(x)) sum_y b(x, y) len(x, y)^2."""

    max_ratio: float = Field(..., ge=0.0)
    worst_vertex: Optional[str] = None
    passes: bool


class SpectralResult(ReportModel):
    """Eigenvalues in ascending order, optionally with mu-orthonormal eigenvectors."""

    model_config = ConfigDict(ser_json_inf_nan="strings", arbitrary_types_allowed=True)

    eigenvalues: list[float]
    eigenvectors: Optional[np.ndarray] = Field(None, exclude=True)
    residual: float = 0.0
    solver: str = "dense"
    complete: bool = Field(True, description="False when only extremal eigenvalues were computed")
    min_mu: Optional[float] = None

    @property
    def lowest(self) -> float:
        return self.eigenvalues[0]


class DistanceBounds(ReportModel):
    """Bounds on the distance D(x) from a vertex to the Cauchy boundary."""

    vertex: str
    lower: float = Field(..., ge=0.0)
    upper: float
    assumptions: list[str] = Field(default_factory=list)


class CompletenessVerdict(ReportModel):
    verdict: Completeness
    exponent: Optional[float] = None
    evidence: str = ""


class CellReport(ReportModel):
    """Per-cell data of a covering: lowest eigenvalue and smallest edge weight."""

    index: int
    vertices: list[str]
    p: float
    inf_b: float


class CoveringReport(ReportModel):
    m: int
    cells: list[CellReport]
    effective_potential: dict[str, float]
    violations: list[str] = Field(default_factory=list)


class Witness(ReportModel):
    """A vertex or inequality instance supporting a verdict."""

    description: str
    vertex: Optional[str] = None
    value: Optional[float] = None


class CriterionReport(ReportModel):
    """Structured verdict of one criterion check."""

    criterion: Criterion
    verdict: Verdict
    constants: dict[str, Any] = Field(default_factory=dict)
    checks: dict[str, bool] = Field(default_factory=dict)
    witnesses: list[Witness] = Field(default_factory=list)
    truncation_rows: Optional[int] = None
    certificate: Optional[str] = None
    notes: list[str] = Field(default_factory=list)
    manifest: Optional["RunManifest"] = None


class GoleniaTrace(ReportModel):
    """The sequence a_n along one path, with partial sums of a_n^2 mu(y_n)."""

    path: list[str]
    a: list[float]
    log_a2: list[float]
    partial_sums: list[float]
    classification: SeriesClass
    ratio_estimate: Optional[float] = None
    raabe_estimate: Optional[float] = None
    delta: float
    lam: float = Field(..., alias="lambda")

    model_config = ConfigDict(ser_json_inf_nan="strings", populate_by_name=True)


class ProbeReport(ReportModel):
    """Heuristic comparison of lowest eigenvalues under two boundary treatments."""

    rows: list[int]
    lambda_plain: list[float]
    lambda_penalized: list[float]
    gaps: list[float]
    boundary_insensitive: bool
    conclusive: bool = False
    note: str = "heuristic probe; not a proof of (non-)self-adjointness"
    manifest: Optional["RunManifest"] = None


class IdentityCheckResult(ReportModel):
    """Two-sided evaluation of an identity or one-sided inequality."""

    name: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passes: bool
    slack: Optional[float] = None
    imag_residual: Optional[float] = None
    applicable: bool = True
    notes: list[str] = Field(default_factory=list)


class SuiteSummary(ReportModel):
    suite: str
    instances: int
    passed: int
    failed: int
    worst_rel_err: float
    failures: list[str] = Field(default_factory=list)
    manifest: Optional["RunManifest"] = None


class RunManifest(ReportModel):
    """Provenance of a CLI run; equal manifests imply byte-identical reports."""

    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    input_digests: dict[str, str] = Field(default_factory=dict)
    tool_version: str
    seed: int
    timestamp: Optional[str] = None


class CommandResult(ReportModel):
    """Output of a CLI command whose result model carries no manifest."""

    result: Any
    manifest: Optional[RunManifest] = None


CriterionReport.model_rebuild()
ProbeReport.model_rebuild()
SuiteSummary.model_rebuild()
