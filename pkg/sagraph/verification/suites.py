"""Randomized verification suites over seeded instances."""

import logging
from typing import Callable

import numpy as np

from sagraph.config import SolverConfig, resolve
from sagraph.covering.cells import effective_potential
from sagraph.errors import InputError
from sagraph.graph.core import laplacian_bundle
from sagraph.metrics.lengths import sigma1_default
from sagraph.metrics.paths import distances_from
from sagraph.models.graph import PotentialAssignment
from sagraph.models.reports import IdentityCheckResult, SuiteSummary
from sagraph.operators.assembly import apply, gauge_transform, quadratic_form
from sagraph.operators.spectrum import bundle_spectrum
from sagraph.operators.vectors import inner, norm
from sagraph.verification.cutoffs import phi_n, verify_chi_n, verify_cutoff_F, verify_phi_n
from sagraph.verification.identities import (
    compare,
    compare_at_most,
    verify_lemma21,
    verify_prop41_bound,
    verify_prop41_identity,
    verify_prop41_intermediate,
)
from sagraph.verification.random import cycle_covering, random_bundle, random_vector

logger = logging.getLogger(__name__)

Check = Callable[[np.random.Generator, SolverConfig], list[IdentityCheckResult]]


def _lemma21(rng: np.random.Generator, config: SolverConfig) -> list[IdentityCheckResult]:
    bundle = random_bundle(rng)
    return [verify_lemma21(bundle, rng.standard_normal(bundle.graph.size), config)]


def _prop41(rng: np.random.Generator, config: SolverConfig) -> list[IdentityCheckResult]:
    bundle = random_bundle(rng)
    graph = bundle.graph
    u = random_vector(rng, graph.size)
    phi = rng.uniform(0.0, 1.0, size=graph.size)

    # smooth q >= 1 and the extreme admissible potential W = -q
    q = PotentialAssignment(values=1.0 + rng.uniform(0.0, 4.0) * rng.uniform(size=graph.size))
    critical = bundle.with_potential(PotentialAssignment(values=-q.array(graph)))
    lengths = sigma1_default(graph)
    d = distances_from(graph, lengths, [int(rng.integers(graph.size))])
    cutoff = phi_n(d, rng.uniform(0.05, 2.0), q.array(graph))
    return [
        verify_prop41_identity(bundle, u, phi, config),
        verify_prop41_intermediate(critical, q, u, cutoff, config),
        verify_prop41_bound(critical, lengths, q, u, config),
    ]


def _cutoffs(rng: np.random.Generator, config: SolverConfig) -> list[IdentityCheckResult]:
    rho = rng.uniform(0.05, 0.49)
    eps = rng.uniform(0.0, rho) or rho / 2
    R = 1.0 + rng.uniform(0.01, 5.0)
    seed = int(rng.integers(2**31))
    results = [verify_cutoff_F(eps, rho, R, samples=1000, seed=seed, config=config)]

    bundle = random_bundle(rng)
    lengths = sigma1_default(bundle.graph)
    x0 = bundle.graph.vertex_ids[int(rng.integers(bundle.graph.size))]
    n = rng.uniform(0.05, 2.0)
    results.append(verify_chi_n(bundle, lengths, x0, n, config))
    q = PotentialAssignment(values=1.0 + rng.uniform(0.0, 4.0, size=bundle.graph.size))
    results.append(verify_phi_n(bundle, lengths, q, x0, n, config))
    return results


def _covering_bound(rng: np.random.Generator, config: SolverConfig) -> list[IdentityCheckResult]:
    bundle = random_bundle(rng)
    graph = bundle.graph
    u = random_vector(rng, graph.size)
    W_e = effective_potential(graph, bundle.theta, cycle_covering(graph), config).array(graph)
    lower = float(np.sum(graph.mu * (W_e + bundle.potential()) * np.abs(u) ** 2))
    slack = config.inequality_slack * norm(graph, u) ** 2
    return [compare_at_most("covering_bound", lower - slack, quadratic_form(bundle, u), config)]


def _operator(rng: np.random.Generator, config: SolverConfig) -> list[IdentityCheckResult]:
    bundle = random_bundle(rng)
    graph = bundle.graph
    u, v = random_vector(rng, graph.size), random_vector(rng, graph.size)
    scale = norm(graph, u) * norm(graph, v)

    form = compare(
        "quadratic_form", inner(graph, apply(bundle, u), u), quadratic_form(bundle, u), config
    )
    hermitian = compare(
        "hermiticity",
        inner(graph, apply(bundle, u), v),
        inner(graph, u, apply(bundle, v)),
        config,
        scale=scale,
    )

    before = np.array(bundle_spectrum(bundle, config).eigenvalues)
    tau = rng.uniform(-np.pi, np.pi, size=graph.size)
    after = np.array(bundle_spectrum(gauge_transform(bundle, tau), config).eigenvalues)
    shift = float(np.max(np.abs(before - after)))
    gauge = compare("gauge_invariance", shift, 0.0, config, scale=float(np.max(np.abs(before))))

    laplacian = laplacian_bundle(graph).with_theta(bundle.theta)
    eigenvalues = np.array(bundle_spectrum(laplacian, config).eigenvalues)
    radius = float(np.max(np.abs(eigenvalues)))
    positive = compare_at_most("nonnegativity", -float(eigenvalues.min()), 0.0, config, radius)
    return [form, hermitian, gauge, positive]


SUITES: dict[str, Check] = {
    "lemma21": _lemma21,
    "prop41": _prop41,
    "cutoffs": _cutoffs,
    "covering-bound": _covering_bound,
    "operator": _operator,
}


def run_suite(
    suite: str,
    instances: int = 500,
    seed: int | None = None,
    config: SolverConfig | None = None,
) -> SuiteSummary:
    """Run a named suite (or "all") on `instances` seeded random instances each.

    Instance k of a suite draws from default_rng([seed, k]), so single
    failures can be reproduced in isolation.
    """
    config = resolve(config)
    seed = config.seed if seed is None else seed
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise InputError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")

    passed = failed = 0
    worst = 0.0
    failures: list[str] = []
    for name in names:
        check = SUITES[name]
        for k in range(instances):
            rng = np.random.default_rng([seed, k])
            for result in check(rng, config):
                if result.passes:
                    passed += 1
                else:
                    failed += 1
                    failures.append(f"{name}[{k}] {result.name}: rel_err {result.rel_err:.3e}")
                # errors within identity_atol carry no relative information
                informative = not result.passes or result.abs_err > config.identity_atol
                if result.applicable and informative:
                    worst = max(worst, result.rel_err)
        logger.info("suite %s: %d instances done", name, instances)

    return SuiteSummary(
        suite=suite,
        instances=instances,
        passed=passed,
        failed=failed,
        worst_rel_err=worst,
        failures=failures,
    )
