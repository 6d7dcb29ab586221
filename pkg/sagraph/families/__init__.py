"""Layered families: specs, generators, closed forms and asymptotic certificates."""

from sagraph.families.asymptotics import (
    DeficitCertificate,
    PowerTerm,
    deficit_certificate,
    evaluate_terms,
    leading_behaviour,
)
from sagraph.families.closed_forms import (
    closed_form_D_lower,
    closed_form_degree,
    closed_form_forcing_bound,
    closed_form_golenia_an2,
    closed_form_golenia_log_an2,
    closed_form_sigma1_step,
    closed_form_sigma_q_step,
    closed_form_weighted_degree,
)
from sagraph.families.generators import (
    ceil_sqrt,
    family_potential,
    family_q,
    generate,
    row_sizes,
    vertex_rows,
)
from sagraph.families.spec import (
    FamilyKind,
    ForcingBounds,
    LayeredFamilySpec,
    StepCertificate,
    ex51_spec,
    ex52_spec,
    family_spec,
    path_spec,
)

__all__ = [
    "DeficitCertificate",
    "FamilyKind",
    "ForcingBounds",
    "LayeredFamilySpec",
    "PowerTerm",
    "StepCertificate",
    "ceil_sqrt",
    "closed_form_D_lower",
    "closed_form_degree",
    "closed_form_forcing_bound",
    "closed_form_golenia_an2",
    "closed_form_golenia_log_an2",
    "closed_form_sigma1_step",
    "closed_form_sigma_q_step",
    "closed_form_weighted_degree",
    "deficit_certificate",
    "evaluate_terms",
    "ex51_spec",
    "ex52_spec",
    "family_potential",
    "family_q",
    "family_spec",
    "generate",
    "leading_behaviour",
    "path_spec",
    "row_sizes",
    "vertex_rows",
]
