"""Solver configuration shared by all numerical routines."""

from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field

from sagraph.errors import InputError


class SolverConfig(BaseModel):
    """Tolerances, limits and heuristics used across the package."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    tolerance: float = Field(1e-12, ge=0.0, description="Slack over 1.0 for intrinsic checks")
    identity_rtol: float = Field(1e-9, ge=0.0, description="Relative tolerance for identities")
    identity_atol: float = Field(1e-12, ge=0.0, description="Absolute tolerance for identities")
    inequality_slack: float = Field(1e-9, ge=0.0, description="One-sided slack for inequalities")
    dense_limit: int = Field(4096, ge=1, description="Largest matrix size solved densely")
    eigsh_maxiter: int = Field(10000, ge=1)
    residual_rtol: float = Field(
        1e-10, ge=0.0, description="Eigenpair residual allowed per unit of spectral radius"
    )
    ratio_margin: float = Field(0.05, gt=0.0, lt=1.0, description="Margin around 1 for ratio tests")
    tail_window: float = Field(
        0.25, gt=0.0, le=1.0, description="Fraction of terms used for limits"
    )
    frontier_penalty: float = Field(1e6, gt=0.0)
    certificate_horizon: int = Field(1_000_000, ge=1, description="Rows evaluated for suprema")
    seed: int = 0


DEFAULT_CONFIG = SolverConfig()


def load_config(path: str | Path | None = None, **overrides: Any) -> SolverConfig:
    """Load a configuration from a YAML file and apply overrides.

    Args:
        path: Optional YAML file with SolverConfig keys.
        **overrides: Values that take precedence over the file; None values are ignored.

    Returns:
        The resulting configuration.
    """
    data: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        with path.open() as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise InputError(f"configuration file {path} must contain a mapping")

    data.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return SolverConfig(**data)
    except ValueError as e:
        raise InputError(f"invalid configuration: {e}") from e


def resolve(config: SolverConfig | None) -> SolverConfig:
    """Return the given config or the defaults."""
    return config if config is not None else DEFAULT_CONFIG
