"""
Mean absolute difference between landscapes and its two baselines.

MAD_SIM compares a landscape with the noise-free reference of the same
circuit family; MAD_MMS compares it with the constant energy of the maximally
mixed state. A low MAD_SIM and a high MAD_MMS indicate a device that follows
the ideal landscape.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from qlbench.backends.jobs import JobStore
from qlbench.backends.mock import SimulatedBackend
from qlbench.backends.registry import LOCAL_EXACT
from qlbench.core.errors import GridMismatchError, ProvenanceError
from qlbench.core.models import WeightedGraph
from qlbench.landscape.models import GridSpec, Landscape, LandscapeMeta
from qlbench.landscape.sampler import LandscapeSampler
from qlbench.problem.maxcut import mean_energy

MMS_BACKEND = "mms"


def mad(l1: Landscape, l2: Landscape) -> float:
    """
    Average of |E1 - E2| over the grid.

    Raises:
        GridMismatchError: If the landscapes use different grids
    """
    if l1.grid != l2.grid:
        raise GridMismatchError(
            f"grids differ: {l1.grid.shape} vs {l2.grid.shape} points or different values"
        )
    return float(np.mean(np.abs(l1.matrix() - l2.matrix())))


def mms_landscape(g: WeightedGraph, grid: GridSpec) -> Landscape:
    """Constant landscape at the maximally mixed state energy -(total weight)/2."""
    value = mean_energy(g)
    rows, cols = grid.shape
    meta = LandscapeMeta(
        backend=MMS_BACKEND,
        shots="exact",
        depth=1,
        graph_fingerprint=g.fingerprint(),
        noise_label="maximally-mixed",
    )
    return Landscape.from_matrix(grid, [[value] * cols for _ in range(rows)], meta)


def _same_layer(a: Optional[tuple[float, float]], b: Optional[tuple[float, float]]) -> bool:
    if a is None or b is None:
        return a is b
    return all(math.isclose(x, y, rel_tol=0.0, abs_tol=1e-12) for x, y in zip(a, b))


def check_reference(landscape: Landscape, reference: Landscape) -> None:
    """
    Verify that reference is the noise-free counterpart of landscape.

    Raises:
        GridMismatchError: If the grids differ
        ProvenanceError: If the reference is not exact or describes other circuits
    """
    if landscape.grid != reference.grid:
        raise GridMismatchError("reference landscape uses a different grid")
    ref, meta = reference.meta, landscape.meta
    if not ref.exact:
        raise ProvenanceError(f"reference from '{ref.backend}' is sampled, not exact")
    if ref.graph_fingerprint != meta.graph_fingerprint:
        raise ProvenanceError("reference landscape belongs to a different graph")
    if ref.depth != meta.depth:
        raise ProvenanceError(f"reference depth {ref.depth} differs from depth {meta.depth}")
    if not _same_layer(ref.fixed_layer1, meta.fixed_layer1):
        raise ProvenanceError(
            f"reference fixed layer {ref.fixed_layer1} differs from {meta.fixed_layer1}"
        )


def mad_sim(landscape: Landscape, reference: Landscape) -> float:
    """MAD to the noise-free reference after a provenance check."""
    check_reference(landscape, reference)
    return mad(landscape, reference)


def mad_mms(landscape: Landscape, g: WeightedGraph) -> float:
    """MAD to the maximally mixed state baseline."""
    return mad(landscape, mms_landscape(g, landscape.grid))


def exact_reference(landscape: Landscape, g: WeightedGraph) -> Landscape:
    """Noise-free landscape matching the grid, depth and fixed layer of landscape."""
    backend = SimulatedBackend(LOCAL_EXACT, JobStore())
    sampler = LandscapeSampler(backend, g, shots=None, seed=landscape.meta.seed)
    return sampler.sample(landscape.meta.depth, landscape.grid, landscape.meta.fixed_layer1)
