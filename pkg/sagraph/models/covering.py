"""Covering cells and good coverings."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from sagraph.models.graph import VertexId


class CoveringCell(BaseModel):
    """A finite connected subgraph (V_l, E_l) of the host graph.

    `p` (lowest eigenvalue of the cell Laplacian with unit weights) and `inf_b`
    (smallest host weight on E_l) are filled in once computed.
    """

    model_config = ConfigDict(frozen=True)

    vertices: list[VertexId]
    edges: list[tuple[VertexId, VertexId]]
    p: Optional[float] = None
    inf_b: Optional[float] = None


class GoodCovering(BaseModel):
    """A family of cells covering every vertex, every edge between 1 and m times."""

    model_config = ConfigDict(frozen=True)

    cells: list[CoveringCell] = Field(default_factory=list)
    m: int = Field(..., ge=1)
