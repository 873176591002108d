"""Core data models and utilities for qlbench."""

from qlbench.core.config import Settings, get_settings
from qlbench.core.errors import CapabilityError, DataError, QlbenchError
from qlbench.core.models import Assignment, Counts, Edge, NoiseProfile, WeightedGraph

__all__ = [
    "Assignment",
    "Counts",
    "Edge",
    "NoiseProfile",
    "WeightedGraph",
    "Settings",
    "get_settings",
    "QlbenchError",
    "DataError",
    "CapabilityError",
]
