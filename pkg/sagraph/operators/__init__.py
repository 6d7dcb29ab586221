"""Operator assembly, application, quadratic forms and spectra."""

from sagraph.operators.assembly import (
    OperatorMatrix,
    apply,
    assemble,
    edge_differences,
    gauge_transform,
    graph_energy_q,
    quadratic_form,
)
from sagraph.operators.spectrum import bundle_spectrum, ground_state, lowest_eigenvalue, spectrum
from sagraph.operators.vectors import MuVector, as_array, inner, norm

__all__ = [
    "MuVector",
    "OperatorMatrix",
    "apply",
    "as_array",
    "assemble",
    "bundle_spectrum",
    "edge_differences",
    "gauge_transform",
    "graph_energy_q",
    "ground_state",
    "inner",
    "lowest_eigenvalue",
    "norm",
    "quadratic_form",
    "spectrum",
]
