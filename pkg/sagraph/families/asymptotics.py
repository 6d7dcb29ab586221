"""Power-law terms c (n + s)^e and boundedness certificates for their sums over rows."""

import logging
from collections import defaultdict

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import binom

from sagraph.config import SolverConfig, resolve

logger = logging.getLogger(__name__)

EXPANSION_ORDER = 3


class PowerTerm(BaseModel):
    """The row function n -> coef * (n + shift)^exponent."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    coef: float
    exponent: float
    shift: float = 0.0

    def evaluate(self, n: np.ndarray | float) -> np.ndarray:
        base = np.asarray(n, dtype=float) + self.shift
        if self.exponent == 0:
            return np.full_like(base, self.coef)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coef * np.power(np.maximum(base, 0.0), self.exponent)

    def negated(self) -> "PowerTerm":
        return self.model_copy(update={"coef": -self.coef})

    def scaled(self, factor: float) -> "PowerTerm":
        return self.model_copy(update={"coef": self.coef * factor})

    def expand(self, order: int = EXPANSION_ORDER) -> list[tuple[float, float]]:
        """(exponent, coefficient) pairs of the expansion in powers of n."""
        if self.shift == 0 or self.exponent == 0:
            return [(self.exponent, self.coef)]
        return [
            (self.exponent - k, self.coef * float(binom(self.exponent, k)) * self.shift**k)
            for k in range(order + 1)
        ]


def evaluate_terms(terms: list[PowerTerm], n: np.ndarray | float) -> np.ndarray:
    """Sum of the terms at row(s) n."""
    total = np.zeros_like(np.asarray(n, dtype=float))
    for term in terms:
        total = total + term.evaluate(n)
    return total


def leading_behaviour(terms: list[PowerTerm]) -> tuple[float, float] | None:
    """Largest exponent with a non-vanishing coefficient in the expansion of the sum.

    Returns None when every expanded order cancels.
    """
    collected: dict[float, float] = defaultdict(float)
    for term in terms:
        for exponent, coef in term.expand():
            collected[round(exponent, 12)] += coef
    if not collected:
        return None
    scale = max(abs(coef) for coef in collected.values()) or 1.0
    surviving = {e: c for e, c in collected.items() if abs(c) > 1e-12 * scale}
    if not surviving:
        return None
    exponent = max(surviving)
    return exponent, surviving[exponent]


class DeficitCertificate(BaseModel):
    """Whether sum(forcing) - sum(support) stays bounded above over all rows."""

    bounded: bool
    unbounded: bool
    leading_exponent: float | None = None
    leading_coef: float | None = None
    supremum: float
    argmax_row: int
    start_row: int
    horizon: int
    supremum_attained: bool = True


def deficit_certificate(
    forcing: list[PowerTerm],
    support: list[PowerTerm],
    start_row: int = 1,
    config: SolverConfig | None = None,
) -> DeficitCertificate:
    """Decide boundedness of forcing - support by its leading power of n.

    Bounded when the leading exponent is <= 0 or the leading coefficient is
    negative; unbounded when both are positive. The supremum is evaluated on
    rows start_row..certificate_horizon; a maximum on the last row means the
    deficit may still rise beyond the horizon and `supremum_attained` is False.
    """
    config = resolve(config)
    terms = list(forcing) + [term.negated() for term in support]
    leading = leading_behaviour(terms)

    if leading is None:
        top = max((term.exponent for term in terms), default=0.0)
        bounded = top - EXPANSION_ORDER - 1 <= 0
        unbounded = False
    else:
        exponent, coef = leading
        bounded = exponent <= 1e-12 or coef < 0
        unbounded = exponent > 1e-12 and coef > 0

    horizon = max(config.certificate_horizon, start_row)
    rows = np.arange(start_row, horizon + 1, dtype=float)
    values = evaluate_terms(terms, rows)
    best = int(np.argmax(values))
    logger.debug("deficit leading behaviour %s, supremum %.6g", leading, values[best])
    return DeficitCertificate(
        bounded=bounded,
        unbounded=unbounded,
        leading_exponent=None if leading is None else leading[0],
        leading_coef=None if leading is None else leading[1],
        supremum=float(values[best]),
        argmax_row=int(rows[best]),
        start_row=start_row,
        horizon=horizon,
        supremum_attained=best < rows.size - 1,
    )
