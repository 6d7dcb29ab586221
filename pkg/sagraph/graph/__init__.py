"""Graph-core operations and the graph file codec."""

from sagraph.graph.core import (
    connected_components,
    laplacian_bundle,
    neighbors,
    require_valid,
    to_networkx,
    validate,
    vertex_degree,
    weighted_degree,
    weighted_degrees,
)
from sagraph.graph.io import (
    bundle_from_dict,
    bundle_digest,
    bundle_to_dict,
    canonical_digest,
    covering_from_dict,
    covering_to_dict,
    read_bundle,
    read_covering,
    write_bundle,
    write_covering,
)

__all__ = [
    "bundle_digest",
    "bundle_from_dict",
    "bundle_to_dict",
    "canonical_digest",
    "covering_from_dict",
    "covering_to_dict",
    "connected_components",
    "laplacian_bundle",
    "neighbors",
    "read_bundle",
    "read_covering",
    "require_valid",
    "to_networkx",
    "validate",
    "vertex_degree",
    "weighted_degree",
    "weighted_degrees",
    "write_bundle",
    "write_covering",
]
