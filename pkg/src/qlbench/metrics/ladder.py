"""
Noise ladder: depth-1 MAD values of one graph under increasing gate noise.

Each level samples the landscape on a full-coupling simulated device with
p2 from the ladder and p1 = p2 / 10, using the same master seed throughout.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from qlbench.backends.base import BackendDescriptor
from qlbench.backends.jobs import JobStore
from qlbench.backends.mock import SimulatedBackend
from qlbench.compiler.coupling import DeviceSpec
from qlbench.core.logging import get_logger
from qlbench.core.models import NoiseProfile, WeightedGraph
from qlbench.landscape.models import GridSpec
from qlbench.landscape.sampler import LandscapeSampler
from qlbench.metrics.mad import exact_reference, mad, mad_mms

logger = get_logger(__name__)

DEFAULT_LEVELS = (0.0, 0.02, 0.05, 0.1, 0.3, 1.0)


class LadderRow(BaseModel):
    """MAD values at one noise level."""

    model_config = ConfigDict(frozen=True)

    p1: float
    p2: float
    mad_sim: float = Field(ge=0.0)
    mad_mms: float = Field(ge=0.0)


class LadderResult(BaseModel):
    """
    Ladder rows in level order plus the comparison slack.

    The slack is twice the largest per-point standard error of the energy
    estimator: energies span [-total weight, 0], so one shot has standard
    deviation at most total_weight / 2.
    """

    model_config = ConfigDict(frozen=True)

    rows: tuple[LadderRow, ...]
    shots: int
    slack: float

    def mms_non_increasing(self) -> bool:
        return all(
            b.mad_mms <= a.mad_mms + self.slack for a, b in zip(self.rows, self.rows[1:])
        )

    def sim_non_decreasing(self) -> bool:
        return all(
            b.mad_sim >= a.mad_sim - self.slack for a, b in zip(self.rows, self.rows[1:])
        )

    @property
    def monotone(self) -> bool:
        return self.mms_non_increasing() and self.sim_non_decreasing()


def shot_noise_slack(g: WeightedGraph, shots: int) -> float:
    return 2.0 * (g.total_weight / 2.0) / math.sqrt(shots)


def ladder_descriptor(p2: float) -> BackendDescriptor:
    """Noiseless-readout full-coupling device with p2 and p1 = p2 / 10."""
    return BackendDescriptor(
        name=f"ladder-p2-{p2:g}",
        supports_batching=True,
        device_spec=DeviceSpec(coupling="full", label="ladder"),
        noise=NoiseProfile(p1=p2 / 10.0, p2=p2, label=f"p2={p2:g}"),
    )


def noise_ladder(
    graph: WeightedGraph,
    levels: Sequence[float] = DEFAULT_LEVELS,
    shots: int = 1000,
    seed: int = 0,
    grid: Optional[GridSpec] = None,
    workers: int = 1,
) -> LadderResult:
    """
    Sample the depth-1 landscape at every noise level.

    Returns:
        LadderResult with one row per level
    """
    grid = grid or GridSpec.default()
    store = JobStore()
    rows: list[LadderRow] = []
    reference = None
    for p2 in levels:
        backend = SimulatedBackend(ladder_descriptor(p2), store)
        landscape = LandscapeSampler(backend, graph, shots, seed, workers).sample(1, grid)
        if reference is None:
            reference = exact_reference(landscape, graph)
        row = LadderRow(
            p1=p2 / 10.0,
            p2=p2,
            mad_sim=mad(landscape, reference),
            mad_mms=mad_mms(landscape, graph),
        )
        logger.info("ladder_level_sampled", p2=p2, mad_sim=row.mad_sim, mad_mms=row.mad_mms)
        rows.append(row)
    return LadderResult(rows=tuple(rows), shots=shots, slack=shot_noise_slack(graph, shots))
