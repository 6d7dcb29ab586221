"""Functions on vertices and the mu-weighted inner product."""

from typing import Any, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from sagraph.errors import InputError
from sagraph.models.graph import WeightedGraph


class MuVector(BaseModel):
    """A complex function on the vertices, in the dense vertex order of its graph."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_complex(cls, value: Any) -> Any:
        return np.asarray(value, dtype=complex).reshape(-1)

    def norm(self, graph: WeightedGraph) -> float:
        return norm(graph, self.values)

    def inner(self, graph: WeightedGraph, other: "VectorLike") -> complex:
        return inner(graph, self.values, other)


VectorLike = Union[MuVector, np.ndarray, list]


def as_array(graph: WeightedGraph, u: VectorLike) -> np.ndarray:
    """Complex array of u, checked against the graph's vertex count."""
    values = u.values if isinstance(u, MuVector) else np.asarray(u, dtype=complex).reshape(-1)
    if values.shape != (graph.size,):
        raise InputError(
            f"dimension mismatch: vector has {values.size} entries, graph has {graph.size} vertices"
        )
    return values.astype(complex, copy=False)


def inner(graph: WeightedGraph, f: VectorLike, g: VectorLike) -> complex:
    """(f, g) = sum_x mu(x) f(x) conj(g(x))."""
    return complex(np.sum(graph.mu * as_array(graph, f) * np.conj(as_array(graph, g))))


def norm(graph: WeightedGraph, f: VectorLike) -> float:
    values = as_array(graph, f)
    return float(np.sqrt(np.sum(graph.mu * np.abs(values) ** 2)))
