"""Grid sampling of QAOA energy landscapes."""

from qlbench.landscape.executor import ProcessingStats, RowExecutor
from qlbench.landscape.io import export_landscape_csv, load_landscape, save_landscape
from qlbench.landscape.models import (
    GridSpec,
    Landscape,
    LandscapeMeta,
    boundary_deviation,
    find_minimum,
)
from qlbench.landscape.sampler import (
    LandscapeSampler,
    checkpoint_file,
    point_params,
    point_seed,
    sample_landscape,
    warm_start_chain,
)

__all__ = [
    "GridSpec",
    "Landscape",
    "LandscapeMeta",
    "find_minimum",
    "boundary_deviation",
    "LandscapeSampler",
    "checkpoint_file",
    "sample_landscape",
    "warm_start_chain",
    "point_params",
    "point_seed",
    "RowExecutor",
    "ProcessingStats",
    "save_landscape",
    "load_landscape",
    "export_landscape_csv",
]
