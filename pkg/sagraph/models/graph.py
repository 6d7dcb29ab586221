"""Data models for weighted magnetic graphs and the assignments living on them.

Edges are stored once per unordered pair in numpy arrays with canonical
orientation u < v (VertexId order). Phases and edge lengths are arrays aligned
with the edge order, potentials with the vertex order.
"""

from functools import total_ordering
from typing import Any, Iterable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from sagraph.errors import VertexNotFoundError

_ARRAYS = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def wrap_angle(theta: float) -> float:
    """Reduce an angle into (-pi, pi], identifying -pi with pi."""
    return float(wrap_angles(np.array([theta]))[0])


def wrap_angles(theta: np.ndarray) -> np.ndarray:
    """Vectorized wrap into (-pi, pi]; non-finite values pass through."""
    theta = np.asarray(theta, dtype=float)
    return np.pi - np.mod(np.pi - theta, 2.0 * np.pi)


@total_ordering
class VertexId(BaseModel):
    """Opaque, totally ordered vertex identifier.

    Vertices of layered families carry their (row, index) position; file vertices
    carry only a label. Layered vertices sort before plain ones.
    """

    model_config = ConfigDict(frozen=True)

    label: str
    row: int | None = Field(None, ge=1)
    index: int | None = Field(None, ge=1)

    @classmethod
    def layered(cls, row: int, index: int) -> "VertexId":
        """Identifier of vertex x_{row,index}."""
        return cls(label=f"x{row}_{index}", row=row, index=index)

    def sort_key(self) -> tuple:
        if self.row is not None:
            return (0, self.row, self.index or 0, self.label)
        return (1, 0, 0, self.label)

    def __lt__(self, other: "VertexId") -> bool:
        if not isinstance(other, VertexId):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        return hash((self.label, self.row, self.index))

    def __str__(self) -> str:
        return self.label


class Vertex(BaseModel):
    """A vertex together with its measure mu(x)."""

    model_config = ConfigDict(frozen=True)

    id: VertexId
    mu: float


class Edge(BaseModel):
    """View of one stored edge."""

    model_config = ConfigDict(frozen=True)

    u: VertexId
    v: VertexId
    b: float


class ValidationReport(BaseModel):
    """Outcome of a structural validation; validation never raises."""

    violations: list[str] = Field(default_factory=list)
    connected: bool = True
    components: int = 1

    @property
    def valid(self) -> bool:
        return not self.violations


class WeightedGraph(BaseModel):
    """A finite weighted graph (V, b, mu), possibly a truncation of an infinite family.

    `ambient_degree` and `ambient_strength` record, for truncations, the number of
    neighbors and the sum of b each vertex has in the infinite graph.
    """

    model_config = _ARRAYS

    vertices: list[Vertex]
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_b: np.ndarray
    ambient_degree: Optional[np.ndarray] = None
    ambient_strength: Optional[np.ndarray] = None

    _index: dict[VertexId, int] = PrivateAttr(default_factory=dict)
    _mu: np.ndarray = PrivateAttr()
    _adj_ptr: np.ndarray = PrivateAttr()
    _adj_nbr: np.ndarray = PrivateAttr()
    _adj_edge: np.ndarray = PrivateAttr()

    @model_validator(mode="before")
    @classmethod
    def _coerce_arrays(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        for key in ("edge_u", "edge_v"):
            data[key] = np.asarray(data.get(key, []), dtype=np.intp).reshape(-1)
        data["edge_b"] = np.asarray(data.get("edge_b", []), dtype=float).reshape(-1)
        for key, dtype in (("ambient_degree", np.intp), ("ambient_strength", float)):
            if data.get(key) is not None:
                data[key] = np.asarray(data[key], dtype=dtype)
        return data

    @model_validator(mode="after")
    def _check_shapes(self) -> "WeightedGraph":
        n = len(self.vertices)
        if not (self.edge_u.shape == self.edge_v.shape == self.edge_b.shape):
            raise ValueError("edge arrays must have equal length")
        if self.edge_u.size and (
            min(self.edge_u.min(), self.edge_v.min()) < 0
            or max(self.edge_u.max(), self.edge_v.max()) >= n
        ):
            raise ValueError("edge endpoint index out of range")
        for name in ("ambient_degree", "ambient_strength"):
            values = getattr(self, name)
            if values is not None and values.shape != (n,):
                raise ValueError(f"{name} must have one entry per vertex")
        return self

    def model_post_init(self, __context: Any) -> None:
        self._index = {vertex.id: i for i, vertex in enumerate(self.vertices)}
        self._mu = np.array([vertex.mu for vertex in self.vertices], dtype=float)

        rank = self.ranks()
        loops = self.edge_u == self.edge_v
        k = np.flatnonzero(~loops)
        rows = np.concatenate([self.edge_u[k], self.edge_v[k]])
        nbrs = np.concatenate([self.edge_v[k], self.edge_u[k]])
        edge_ids = np.concatenate([k, k])
        order = np.lexsort((rank[nbrs] if nbrs.size else nbrs, rows))
        self._adj_nbr = nbrs[order]
        self._adj_edge = edge_ids[order]
        counts = np.bincount(rows, minlength=self.size)
        self._adj_ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.intp)

    @classmethod
    def from_arrays(
        cls,
        vertices: list[Vertex],
        u: np.ndarray,
        v: np.ndarray,
        b: np.ndarray,
        **kwargs: Any,
    ) -> "WeightedGraph":
        """Build a graph from index arrays, reorienting every edge so that u < v."""
        u = np.asarray(u, dtype=np.intp)
        v = np.asarray(v, dtype=np.intp)
        rank = _ranks(vertices)
        swap = rank[u] > rank[v] if u.size else np.zeros(0, dtype=bool)
        cu = np.where(swap, v, u)
        cv = np.where(swap, u, v)
        return cls(vertices=vertices, edge_u=cu, edge_v=cv, edge_b=b, **kwargs)

    @classmethod
    def from_edges(
        cls,
        vertices: list[Vertex],
        edges: Iterable[tuple[VertexId, VertexId, float]],
        **kwargs: Any,
    ) -> "WeightedGraph":
        """Build a graph from (u, v, b) triples keyed by VertexId."""
        index = {vertex.id: i for i, vertex in enumerate(vertices)}
        u, v, b = [], [], []
        for x, y, weight in edges:
            for endpoint in (x, y):
                if endpoint not in index:
                    raise VertexNotFoundError(endpoint)
            u.append(index[x])
            v.append(index[y])
            b.append(float(weight))
        return cls.from_arrays(vertices, np.array(u), np.array(v), np.array(b), **kwargs)

    def ranks(self) -> np.ndarray:
        """Position of each vertex in ascending VertexId order."""
        return _ranks(self.vertices)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return int(self.edge_u.size)

    @property
    def vertex_ids(self) -> list[VertexId]:
        return [vertex.id for vertex in self.vertices]

    @property
    def mu(self) -> np.ndarray:
        """Measure aligned with the dense vertex order."""
        return self._mu

    def edges(self) -> list[Edge]:
        """All stored edges as models, in storage order."""
        ids = self.vertex_ids
        return [
            Edge(u=ids[i], v=ids[j], b=float(w))
            for i, j, w in zip(self.edge_u, self.edge_v, self.edge_b)
        ]

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def index_of(self, x: VertexId) -> int:
        """Dense index of a vertex in insertion order."""
        try:
            return self._index[x]
        except KeyError:
            raise VertexNotFoundError(x) from None

    def neighbor_slice(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """(neighbor indices, edge indices) of vertex i, in ascending VertexId order."""
        start, stop = self._adj_ptr[i], self._adj_ptr[i + 1]
        return self._adj_nbr[start:stop], self._adj_edge[start:stop]

    def edge_index(self, i: int, j: int) -> int | None:
        """Position of the edge {i, j} in storage order, or None for non-edges."""
        nbrs, edge_ids = self.neighbor_slice(i)
        hits = np.flatnonzero(nbrs == j)
        return int(edge_ids[hits[0]]) if hits.size else None

    def weight(self, x: VertexId, y: VertexId) -> float:
        """b(x, y); zero for non-neighbors."""
        k = self.edge_index(self.index_of(x), self.index_of(y))
        return 0.0 if k is None else float(self.edge_b[k])

    def degrees(self) -> np.ndarray:
        return np.diff(self._adj_ptr)

    def ambient_degrees(self) -> np.ndarray:
        """Degrees in the infinite family where recorded, local degrees otherwise."""
        if self.ambient_degree is None:
            return self.degrees()
        return self.ambient_degree

    def strengths(self, ambient: bool = False) -> np.ndarray:
        """Sum of b over the neighbors of each vertex."""
        if ambient and self.ambient_strength is not None:
            return self.ambient_strength
        keep = self.edge_u != self.edge_v
        return np.bincount(
            self.edge_u[keep], weights=self.edge_b[keep], minlength=self.size
        ) + np.bincount(self.edge_v[keep], weights=self.edge_b[keep], minlength=self.size)

    def subgraph(self, indices: np.ndarray) -> "WeightedGraph":
        """Induced subgraph on the given vertex indices (ambient data dropped)."""
        indices = np.asarray(indices, dtype=np.intp)
        remap = np.full(self.size, -1, dtype=np.intp)
        remap[indices] = np.arange(indices.size)
        keep = (remap[self.edge_u] >= 0) & (remap[self.edge_v] >= 0)
        return WeightedGraph(
            vertices=[self.vertices[i] for i in indices],
            edge_u=remap[self.edge_u[keep]],
            edge_v=remap[self.edge_v[keep]],
            edge_b=self.edge_b[keep],
        )


def _ranks(vertices: list[Vertex]) -> np.ndarray:
    order = sorted(range(len(vertices)), key=lambda i: vertices[i].id.sort_key())
    rank = np.empty(len(vertices), dtype=np.intp)
    rank[order] = np.arange(len(vertices))
    return rank


class PhaseAssignment(BaseModel):
    """Antisymmetric phase theta, one angle per canonical edge (u, v) with u < v.

    theta(v, u) is the wrapped negation of theta(u, v). Angles are reduced into
    (-pi, pi] on construction. `values=None` is the zero phase.
    """

    model_config = _ARRAYS

    values: Optional[np.ndarray] = None

    @field_validator("values", mode="before")
    @classmethod
    def _normalize(cls, value: Any) -> Any:
        if value is None:
            return None
        return wrap_angles(np.asarray(value, dtype=float).reshape(-1))

    @classmethod
    def zero(cls) -> "PhaseAssignment":
        return cls()

    def array(self, graph: WeightedGraph) -> np.ndarray:
        """theta(u, v) on every canonical edge, in storage order."""
        if self.values is None:
            return np.zeros(graph.edge_count)
        return self.values

    def phase(self, graph: WeightedGraph, x: VertexId, y: VertexId) -> float:
        """theta(x, y) for the directed edge x -> y; zero off edges."""
        i, j = graph.index_of(x), graph.index_of(y)
        k = graph.edge_index(i, j)
        if k is None:
            return 0.0
        angle = float(self.array(graph)[k])
        return angle if graph.edge_u[k] == i else wrap_angle(-angle)


class PotentialAssignment(BaseModel):
    """A real function on vertices (the potential W, or a minorant table q).

    `values=None` is the zero function.
    """

    model_config = _ARRAYS

    values: Optional[np.ndarray] = None

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> Any:
        return None if value is None else np.asarray(value, dtype=float).reshape(-1)

    @classmethod
    def zero(cls) -> "PotentialAssignment":
        return cls()

    @classmethod
    def constant(cls, graph: WeightedGraph, value: float) -> "PotentialAssignment":
        return cls(values=np.full(graph.size, float(value)))

    @classmethod
    def from_mapping(
        cls, graph: WeightedGraph, values: dict[VertexId, float]
    ) -> "PotentialAssignment":
        array = np.zeros(graph.size)
        for x, value in values.items():
            array[graph.index_of(x)] = value
        return cls(values=array)

    def array(self, graph: WeightedGraph) -> np.ndarray:
        """Values aligned with the dense vertex order of the graph."""
        if self.values is None:
            return np.zeros(graph.size)
        return self.values

    def value(self, graph: WeightedGraph, x: VertexId) -> float:
        return float(self.array(graph)[graph.index_of(x)])


class EdgeLengthAssignment(BaseModel):
    """Edge lengths sigma, one per canonical edge, aligned with storage order."""

    model_config = _ARRAYS

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> Any:
        return np.asarray(value, dtype=float).reshape(-1)

    def length(self, graph: WeightedGraph, x: VertexId, y: VertexId) -> float:
        k = graph.edge_index(graph.index_of(x), graph.index_of(y))
        if k is None:
            raise VertexNotFoundError(f"{x}-{y} (no such edge)")
        return float(self.values[k])

    def scaled(self, factor: float) -> "EdgeLengthAssignment":
        return EdgeLengthAssignment(values=self.values * factor)


class GraphBundle(BaseModel):
    """A graph with its phase, potential and, for truncations, the frontier."""

    model_config = _ARRAYS

    graph: WeightedGraph
    theta: PhaseAssignment = Field(default_factory=PhaseAssignment)
    W: PotentialAssignment = Field(default_factory=PotentialAssignment)
    sigma: Optional[EdgeLengthAssignment] = None
    frontier: list[VertexId] = Field(default_factory=list)
    family: Optional[Any] = Field(None, description="LayeredFamilySpec of generated truncations")
    rows: Optional[int] = None

    @model_validator(mode="after")
    def _check_references(self) -> "GraphBundle":
        if self.theta.values is not None and self.theta.values.size != self.graph.edge_count:
            raise ValueError("theta must have one angle per edge")
        if self.W.values is not None and self.W.values.size != self.graph.size:
            raise ValueError("W must have one value per vertex")
        if self.sigma is not None and self.sigma.values.size != self.graph.edge_count:
            raise ValueError("sigma must have one length per edge")
        for x in self.frontier:
            if x not in self.graph:
                raise VertexNotFoundError(x)
        return self

    @property
    def is_truncation(self) -> bool:
        return bool(self.frontier)

    def potential(self) -> np.ndarray:
        return self.W.array(self.graph)

    def phases(self) -> np.ndarray:
        return self.theta.array(self.graph)

    def frontier_indices(self) -> np.ndarray:
        return np.array([self.graph.index_of(x) for x in self.frontier], dtype=np.intp)

    def with_potential(self, W: PotentialAssignment) -> "GraphBundle":
        return self.model_copy(update={"W": W})

    def with_theta(self, theta: PhaseAssignment) -> "GraphBundle":
        return self.model_copy(update={"theta": theta})
