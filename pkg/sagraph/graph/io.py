"""JSON codec for graph bundles and coverings."""

import hashlib
import json
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from sagraph.errors import InputError, VertexNotFoundError
from sagraph.models.covering import CoveringCell, GoodCovering
from sagraph.models.graph import (
    EdgeLengthAssignment,
    GraphBundle,
    PhaseAssignment,
    PotentialAssignment,
    Vertex,
    VertexId,
    WeightedGraph,
)


class _Record(BaseModel):
    model_config = ConfigDict(extra="forbid")


class VertexRecord(_Record):
    id: str
    mu: float
    row: Optional[int] = None
    index: Optional[int] = None


class EdgeRecord(_Record):
    u: str
    v: str
    b: float
    theta: float = 0.0
    sigma: Optional[float] = None


class GraphFile(_Record):
    """On-disk layout of a graph bundle."""

    vertices: list[VertexRecord]
    edges: list[EdgeRecord] = Field(default_factory=list)
    potential: dict[str, float] = Field(default_factory=dict)
    frontier: list[str] = Field(default_factory=list)
    rows: Optional[int] = None
    family: Optional[dict[str, Any]] = None
    ambient_degree: Optional[dict[str, int]] = None
    ambient_strength: Optional[dict[str, float]] = None


class CellRecord(_Record):
    vertices: list[str]
    edges: list[tuple[str, str]]


class CoveringFile(_Record):
    m: int
    cells: list[CellRecord]


def _load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        with path.open() as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def bundle_from_dict(data: Any) -> GraphBundle:
    """Build a bundle from the JSON structure of a graph file."""
    try:
        record = GraphFile.model_validate(data)
    except ValidationError as e:
        raise InputError(f"invalid graph file: {e}") from e

    vertices = [
        Vertex(id=VertexId(label=v.id, row=v.row, index=v.index), mu=v.mu)
        for v in record.vertices
    ]
    by_label = {vertex.id.label: i for i, vertex in enumerate(vertices)}

    def lookup(label: str) -> int:
        try:
            return by_label[label]
        except KeyError:
            raise VertexNotFoundError(label) from None

    u = np.array([lookup(e.u) for e in record.edges], dtype=np.intp)
    v = np.array([lookup(e.v) for e in record.edges], dtype=np.intp)
    b = np.array([e.b for e in record.edges], dtype=float)
    theta = np.array([e.theta for e in record.edges], dtype=float)

    def per_vertex(mapping: Optional[dict[str, Any]], dtype: type) -> Optional[np.ndarray]:
        if mapping is None:
            return None
        array = np.zeros(len(vertices), dtype=dtype)
        for label, value in mapping.items():
            array[lookup(label)] = value
        return array

    graph = WeightedGraph.from_arrays(
        vertices,
        u,
        v,
        b,
        ambient_degree=per_vertex(record.ambient_degree, np.intp),
        ambient_strength=per_vertex(record.ambient_strength, float),
    )
    rank = graph.ranks()
    swapped = rank[u] > rank[v] if u.size else np.zeros(0, dtype=bool)
    theta = np.where(swapped, -theta, theta)

    sigmas = [e.sigma for e in record.edges]
    sigma = None
    if any(s is not None for s in sigmas):
        if any(s is None for s in sigmas):
            raise InputError("edge lengths must be given on every edge or on none")
        sigma = EdgeLengthAssignment(values=np.array(sigmas, dtype=float))

    family = None
    if record.family is not None:
        from sagraph.families.spec import LayeredFamilySpec

        try:
            family = LayeredFamilySpec.model_validate(record.family)
        except ValidationError as e:
            raise InputError(f"invalid family spec: {e}") from e

    return GraphBundle(
        graph=graph,
        theta=PhaseAssignment(values=theta) if np.any(theta) else PhaseAssignment.zero(),
        W=PotentialAssignment(values=per_vertex(record.potential, float))
        if record.potential
        else PotentialAssignment.zero(),
        sigma=sigma,
        frontier=[vertices[lookup(label)].id for label in record.frontier],
        family=family,
        rows=record.rows,
    )


def bundle_to_dict(bundle: GraphBundle) -> dict[str, Any]:
    """JSON structure of a bundle; inverse of bundle_from_dict."""
    graph = bundle.graph
    ids = graph.vertex_ids

    vertices = []
    for vertex in graph.vertices:
        entry: dict[str, Any] = {"id": vertex.id.label, "mu": float(vertex.mu)}
        if vertex.id.row is not None:
            entry["row"] = vertex.id.row
            entry["index"] = vertex.id.index
        vertices.append(entry)

    theta = bundle.phases()
    edges = []
    for k, (i, j) in enumerate(zip(graph.edge_u.tolist(), graph.edge_v.tolist())):
        entry = {"u": ids[i].label, "v": ids[j].label, "b": float(graph.edge_b[k])}
        if bundle.theta.values is not None:
            entry["theta"] = float(theta[k])
        if bundle.sigma is not None:
            entry["sigma"] = float(bundle.sigma.values[k])
        edges.append(entry)

    data: dict[str, Any] = {"vertices": vertices, "edges": edges}
    if bundle.W.values is not None:
        data["potential"] = {x.label: float(w) for x, w in zip(ids, bundle.W.values)}
    if bundle.frontier:
        data["frontier"] = [x.label for x in bundle.frontier]
    if bundle.rows is not None:
        data["rows"] = bundle.rows
    if bundle.family is not None:
        data["family"] = bundle.family.model_dump(mode="json")
    if graph.ambient_degree is not None:
        data["ambient_degree"] = {x.label: int(d) for x, d in zip(ids, graph.ambient_degree)}
    if graph.ambient_strength is not None:
        data["ambient_strength"] = {
            x.label: float(s) for x, s in zip(ids, graph.ambient_strength)
        }
    return data


def read_bundle(path: str | Path) -> GraphBundle:
    """Read a graph file."""
    return bundle_from_dict(_load_json(path))


def write_bundle(bundle: GraphBundle, path: str | Path) -> None:
    """Write a bundle as a graph file."""
    with Path(path).open("w") as f:
        json.dump(bundle_to_dict(bundle), f, indent=2)


def canonical_digest(data: Any) -> str:
    """sha256 of the canonical JSON encoding of a structure."""
    encoded = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(encoded.encode()).hexdigest()


def bundle_digest(bundle: GraphBundle) -> str:
    return canonical_digest(bundle_to_dict(bundle))


def covering_from_dict(data: Any, graph: WeightedGraph) -> GoodCovering:
    """Resolve a covering file against the host graph's vertex labels."""
    try:
        record = CoveringFile.model_validate(data)
    except ValidationError as e:
        raise InputError(f"invalid covering file: {e}") from e

    by_label = {x.label: x for x in graph.vertex_ids}

    def lookup(label: str) -> VertexId:
        try:
            return by_label[label]
        except KeyError:
            raise VertexNotFoundError(label) from None

    cells = [
        CoveringCell(
            vertices=[lookup(label) for label in cell.vertices],
            edges=[(lookup(u), lookup(v)) for u, v in cell.edges],
        )
        for cell in record.cells
    ]
    try:
        return GoodCovering(cells=cells, m=record.m)
    except ValidationError as e:
        raise InputError(f"invalid covering: {e}") from e


def covering_to_dict(covering: GoodCovering) -> dict[str, Any]:
    return {
        "m": covering.m,
        "cells": [
            {
                "vertices": [x.label for x in cell.vertices],
                "edges": [[u.label, v.label] for u, v in cell.edges],
            }
            for cell in covering.cells
        ],
    }


def read_covering(path: str | Path, graph: WeightedGraph) -> GoodCovering:
    """Read a covering file for the given host graph."""
    return covering_from_dict(_load_json(path), graph)


def write_covering(covering: GoodCovering, path: str | Path) -> None:
    with Path(path).open("w") as f:
        json.dump(covering_to_dict(covering), f, indent=2)
