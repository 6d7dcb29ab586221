"""Closed-form row quantities of the built-in families."""

import math
from math import isqrt

import numpy as np
from scipy.special import gammaln

from sagraph.errors import FamilyParameterError
from sagraph.families.spec import FamilyKind, LayeredFamilySpec


def _require(spec: LayeredFamilySpec, *kinds: FamilyKind) -> None:
    if spec.kind not in kinds:
        names = ", ".join(kind.value for kind in kinds)
        raise FamilyParameterError(f"closed form available for {names} only, not {spec.kind.value}")


def _require_row(j: int) -> None:
    if j < 1:
        raise FamilyParameterError(f"row index must be at least 1 (got {j})")


def closed_form_degree(spec: LayeredFamilySpec, j: int) -> int:
    """deg(x_{j,1}) in the infinite graph."""
    _require(spec, FamilyKind.EX51, FamilyKind.EX52, FamilyKind.PATH)
    _require_row(j)
    if spec.kind == FamilyKind.EX51:
        return 2 if j == 1 else isqrt(j) + 3
    if spec.kind == FamilyKind.EX52:
        return 2 * j
    return 1 if j == 1 else 2


def closed_form_weighted_degree(spec: LayeredFamilySpec, j: int) -> float:
    """Deg(x_{j,1}) in the infinite graph."""
    _require(spec, FamilyKind.EX51, FamilyKind.EX52)
    _require_row(j)
    if spec.kind == FamilyKind.EX52:
        return 2.0 * math.sqrt(j)
    if j == 1:
        return 2.0
    alpha, beta = spec.alpha, spec.beta
    return j ** (2 * beta) * ((isqrt(j) + 1) * j**alpha + 2 * (j - 1) ** alpha)


def closed_form_sigma1_step(spec: LayeredFamilySpec, j: int) -> float:
    """sigma_1 on the spine edge (x_{j,1}, x_{j+1,1})."""
    _require(spec, FamilyKind.EX51, FamilyKind.EX52, FamilyKind.PATH)
    _require_row(j)
    if spec.kind == FamilyKind.EX51:
        alpha, beta = spec.alpha, spec.beta
        return j ** (-alpha / 2) * (j + 1) ** (-beta) * (isqrt(j + 1) + 3) ** -0.5
    if spec.kind == FamilyKind.EX52:
        return 2**-0.5 * (j + 1) ** -0.25
    return 2**-0.5


def closed_form_sigma_q_step(spec: LayeredFamilySpec, k: int) -> float:
    """sigma_q between rows k and k + 1 of ex52 with q = 2k."""
    _require(spec, FamilyKind.EX52)
    _require_row(k)
    return 0.5 * (k + 1) ** -0.75


def _spine_excess(spec: LayeredFamilySpec) -> float:
    _require(spec, FamilyKind.EX51)
    excess = spec.beta + spec.alpha / 2 - 0.75
    if excess <= 0:
        raise FamilyParameterError(
            f"beta + alpha/2 must exceed 3/4 (got {spec.beta + spec.alpha / 2})"
        )
    return excess


def closed_form_D_lower(spec: LayeredFamilySpec, n: int) -> float:
    """Lower bound on D(x) for x in row n.

    The bound is (n+1)^(-e) / (sqrt(3) e) with e = beta + alpha/2 - 3/4.
    """
    excess = _spine_excess(spec)
    _require_row(n)
    return (n + 1) ** (-excess) / (math.sqrt(3.0) * excess)


def closed_form_forcing_bound(spec: LayeredFamilySpec, n: int) -> float:
    """3(4 beta + 2 alpha - 3)^2 (n+1)^(2 beta + alpha - 3/2) / 32, an upper bound on 1/(2 D^2)."""
    _spine_excess(spec)
    _require_row(n)
    alpha, beta = spec.alpha, spec.beta
    return 3 * (4 * beta + 2 * alpha - 3) ** 2 * (n + 1) ** (2 * beta + alpha - 1.5) / 32


def closed_form_golenia_log_an2(
    spec: LayeredFamilySpec, n: int, delta: float, lam: float
) -> float:
    """log a_n^2 along the spine (ex52 with its own W, ex51 with W = 0)."""
    _require(spec, FamilyKind.EX51, FamilyKind.EX52)
    _require_row(n)
    if n == 1:
        return 0.0
    if spec.kind == FamilyKind.EX52:
        return (
            (2 * n - 2) * math.log(delta + abs(lam))
            - (n - 1) * math.log(4.0)
            - float(gammaln(n))
        )
    degrees = np.array([closed_form_weighted_degree(spec, j) for j in range(1, n)])
    ratios = delta / degrees + np.abs(1.0 + lam / degrees)
    return float(2.0 * np.sum(np.log(ratios)))


def closed_form_golenia_an2(spec: LayeredFamilySpec, n: int, delta: float, lam: float) -> float:
    """a_n^2, evaluated in log space; ex52 gives (delta+|lambda|)^(2n-2) / (4^(n-1) (n-1)!)."""
    return math.exp(closed_form_golenia_log_an2(spec, n, delta, lam))
