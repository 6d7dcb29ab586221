"""Layered family specifications with certified asymptotic metadata."""

import math
from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from sagraph.errors import FamilyParameterError
from sagraph.families.asymptotics import PowerTerm


class FamilyKind(str, Enum):
    EX51 = "ex51"
    EX52 = "ex52"
    PATH = "path"
    CUSTOM = "custom"


LengthKind = Literal["sigma", "sigma_q"]
PotentialMode = Literal["family", "zero", "opposite"]


class StepCertificate(BaseModel):
    """Spine steps satisfy lower_coef (j+1)^-p <= step_j <= upper_coef (j+1)^-p."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    exponent: float
    lower_coef: float = Field(..., gt=0.0)
    upper_coef: float = Field(..., gt=0.0)
    spine_geodesic: bool = False
    escape_bounded_by_spine: bool = False


class ForcingBounds(BaseModel):
    """Bounds on 1/(2 D(x)^2) for x in row n: upper on every vertex, lower on the spine."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    upper: list[PowerTerm]
    lower: list[PowerTerm]


class LayeredFamilySpec(BaseModel):
    """An infinite graph arranged in rows, with row formulas and certificates.

    `weight` is b_j on edges from row j to row j + 1 (and, for ex51, on the
    horizontal edges of row j + 1); `measure`, `potential` and `q` are row
    functions. `steps` holds spine-step certificates per length kind.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: FamilyKind
    alpha: Optional[float] = None
    beta: Optional[float] = None
    weight: PowerTerm = PowerTerm(coef=1.0, exponent=0.0)
    measure: PowerTerm = PowerTerm(coef=1.0, exponent=0.0)
    potential: list[PowerTerm] = Field(default_factory=list)
    q: Optional[list[PowerTerm]] = None
    steps: dict[str, StepCertificate] = Field(default_factory=dict)
    forcing: Optional[ForcingBounds] = None
    effective_minorant: Optional[list[PowerTerm]] = None
    lipschitz_bound: Optional[float] = None
    flags: dict[str, bool] = Field(default_factory=dict)

    @property
    def spine_exponent(self) -> Optional[float]:
        step = self.steps.get("sigma")
        return None if step is None else step.exponent

    def potential_terms(self, mode: PotentialMode = "family") -> list[PowerTerm]:
        """Row formula of W: the family's own, zero, or its negation."""
        if mode == "zero":
            return []
        if mode == "opposite":
            return [term.negated() for term in self.potential]
        return list(self.potential)


def ex51_spec(alpha: float = 1.0, beta: float = 0.5) -> LayeredFamilySpec:
    """Triangular family: row j has ceil(sqrt(j)) vertices, b_j = j^alpha, mu = j^(-2 beta)."""
    violations = []
    if not alpha > 0:
        violations.append(f"alpha must be positive (got {alpha})")
    if not 0 < beta < 0.75:
        violations.append(f"beta must lie in (0, 3/4) (got {beta})")
    if violations:
        raise FamilyParameterError("; ".join(violations))

    p = beta + alpha / 2 + 0.25
    excess = p - 1.0
    steps = {
        "sigma": StepCertificate(
            exponent=p,
            lower_coef=1.0 / math.sqrt(3.0),
            upper_coef=2.0 ** (alpha / 2),
            spine_geodesic=True,
            escape_bounded_by_spine=True,
        )
    }
    forcing = None
    if excess > 0:
        upper_coef = 2.0 ** (alpha / 2) * (1.0 / excess + 1.0)
        forcing = ForcingBounds(
            upper=[PowerTerm(coef=1.5 * excess**2, exponent=2 * excess, shift=1.0)],
            lower=[PowerTerm(coef=0.5 / upper_coef**2, exponent=2 * excess)],
        )
    return LayeredFamilySpec(
        kind=FamilyKind.EX51,
        alpha=alpha,
        beta=beta,
        weight=PowerTerm(coef=1.0, exponent=alpha),
        measure=PowerTerm(coef=1.0, exponent=-2 * beta),
        potential=[PowerTerm(coef=-1.0, exponent=2 * beta + alpha - 1.5)],
        steps=steps,
        forcing=forcing,
        effective_minorant=[PowerTerm(coef=0.5, exponent=alpha, shift=-1.0)],
        flags={
            "incomplete": alpha + 2 * beta > 1.5,
            "golenia_comparison": beta > 0.5,
        },
    )


def ex52_spec() -> LayeredFamilySpec:
    """Row k has k vertices, complete bipartite to row k + 1, b = 1, mu = k^(1/2)."""
    return LayeredFamilySpec(
        kind=FamilyKind.EX52,
        weight=PowerTerm(coef=1.0, exponent=0.0),
        measure=PowerTerm(coef=1.0, exponent=0.5),
        potential=[PowerTerm(coef=-2.0, exponent=0.5)],
        q=[PowerTerm(coef=2.0, exponent=1.0)],
        steps={
            "sigma": StepCertificate(
                exponent=0.25,
                lower_coef=2.0**-0.5,
                upper_coef=2.0**-0.5,
                spine_geodesic=True,
                escape_bounded_by_spine=True,
            ),
            "sigma_q": StepCertificate(
                exponent=0.75,
                lower_coef=0.5,
                upper_coef=0.5,
                spine_geodesic=True,
                escape_bounded_by_spine=True,
            ),
        },
        lipschitz_bound=1.0,
    )


def path_spec() -> LayeredFamilySpec:
    """The half-line: one vertex per row, b = mu = 1, W = 0, q = 1."""
    step = StepCertificate(
        exponent=0.0,
        lower_coef=2.0**-0.5,
        upper_coef=2.0**-0.5,
        spine_geodesic=True,
        escape_bounded_by_spine=True,
    )
    return LayeredFamilySpec(
        kind=FamilyKind.PATH,
        q=[PowerTerm(coef=1.0, exponent=0.0)],
        steps={"sigma": step, "sigma_q": step},
        lipschitz_bound=0.0,
    )


def family_spec(
    kind: FamilyKind | str, alpha: float | None = None, beta: float | None = None
) -> LayeredFamilySpec:
    """Spec of a built-in family by name."""
    kind = FamilyKind(kind)
    if kind == FamilyKind.EX51:
        return ex51_spec(alpha if alpha is not None else 1.0, beta if beta is not None else 0.5)
    if kind == FamilyKind.EX52:
        return ex52_spec()
    if kind == FamilyKind.PATH:
        return path_spec()
    raise FamilyParameterError("custom families must be supplied in a graph file")
