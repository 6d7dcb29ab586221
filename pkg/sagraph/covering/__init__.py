"""Good coverings, cell eigenvalues and the effective potential."""

from sagraph.covering.cells import (
    cell_bundle,
    cell_inf_weight,
    cell_lowest_eigenvalue,
    covering_report,
    effective_potential,
    evaluate_covering,
    validate_covering,
)
from sagraph.covering.triangles import cell_holonomy, triangle_covering

__all__ = [
    "cell_bundle",
    "cell_holonomy",
    "cell_inf_weight",
    "cell_lowest_eigenvalue",
    "covering_report",
    "effective_potential",
    "evaluate_covering",
    "triangle_covering",
    "validate_covering",
]
