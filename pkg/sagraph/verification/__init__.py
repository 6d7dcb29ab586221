"""Numerical verification of identities and inequalities on finite instances."""

from sagraph.verification.cutoffs import (
    chi_n,
    cutoff_F,
    phi_n,
    verify_chi_n,
    verify_cutoff_F,
    verify_phi_n,
)
from sagraph.verification.identities import (
    compare,
    compare_at_most,
    verify_lemma21,
    verify_prop41_bound,
    verify_prop41_identity,
    verify_prop41_intermediate,
    verify_theorem1_lower_bound,
)
from sagraph.verification.random import cycle_covering, random_bundle, random_vector
from sagraph.verification.suites import SUITES, run_suite

__all__ = [
    "SUITES",
    "chi_n",
    "compare",
    "compare_at_most",
    "cutoff_F",
    "cycle_covering",
    "phi_n",
    "random_bundle",
    "random_vector",
    "run_suite",
    "verify_chi_n",
    "verify_cutoff_F",
    "verify_lemma21",
    "verify_phi_n",
    "verify_prop41_bound",
    "verify_prop41_identity",
    "verify_prop41_intermediate",
    "verify_theorem1_lower_bound",
]
