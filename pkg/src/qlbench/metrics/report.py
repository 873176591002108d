"""
MAD report: one (MAD_SIM, MAD_MMS) pair per landscape.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from qlbench.core.errors import GridMismatchError, ProvenanceError
from qlbench.core.logging import get_logger
from qlbench.core.models import WeightedGraph
from qlbench.landscape.models import Landscape
from qlbench.metrics.mad import check_reference, exact_reference, mad, mad_mms

logger = get_logger(__name__)

REPORT_COLUMNS = ("backend", "depth", "replication", "mad_sim", "mad_mms")


class MadRow(BaseModel):
    """MAD values of one landscape."""

    model_config = ConfigDict(frozen=True)

    backend: str
    depth: int
    replication: str
    mad_sim: float = Field(ge=0.0)
    mad_mms: float = Field(ge=0.0)
    source: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {column: getattr(self, column) for column in REPORT_COLUMNS}


class MadReport(BaseModel):
    """Rows grouped by backend (first appearance), then depth and replication."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[MadRow, ...] = ()

    def __len__(self) -> int:
        return len(self.rows)

    def for_backend(self, backend: str) -> list[MadRow]:
        return [row for row in self.rows if row.backend == backend]


def _find_reference(landscape: Landscape, references: Sequence[Landscape]) -> Landscape:
    for reference in references:
        try:
            check_reference(landscape, reference)
        except (ProvenanceError, GridMismatchError):
            continue
        return reference
    raise ProvenanceError(
        f"no exact reference matches landscape from '{landscape.meta.backend}' "
        f"(depth {landscape.meta.depth}, replication {landscape.meta.replication})"
    )


def report(
    landscapes: Sequence[Landscape],
    references: Optional[Sequence[Landscape]],
    g: WeightedGraph,
    sources: Optional[Sequence[str]] = None,
) -> MadReport:
    """
    Assemble the MAD table.

    Args:
        landscapes: Landscapes to evaluate
        references: Exact references to match by provenance; None recomputes
            an exact reference for every landscape
        g: MaxCut instance the landscapes were sampled for
        sources: Optional label per landscape (e.g. its file name)

    Raises:
        ProvenanceError: If a landscape has no matching reference or another graph
    """
    fingerprint = g.fingerprint()
    order: dict[str, int] = {}
    rows: list[MadRow] = []
    for index, landscape in enumerate(landscapes):
        source = sources[index] if sources is not None else ""
        if landscape.meta.graph_fingerprint != fingerprint:
            raise ProvenanceError(f"landscape {source or index} was sampled for a different graph")
        if references is None:
            reference = exact_reference(landscape, g)
        else:
            reference = _find_reference(landscape, references)
        order.setdefault(landscape.meta.backend, len(order))
        rows.append(
            MadRow(
                backend=landscape.meta.backend,
                depth=landscape.meta.depth,
                replication=landscape.meta.replication,
                mad_sim=mad(landscape, reference),
                mad_mms=mad_mms(landscape, g),
                source=source,
            )
        )

    rows.sort(key=lambda r: (order[r.backend], r.depth, r.replication))
    logger.info("mad_report_assembled", rows=len(rows), backends=len(order))
    return MadReport(rows=tuple(rows))
