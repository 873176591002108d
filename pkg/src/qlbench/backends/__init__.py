"""Backend abstraction, mock devices and result normalization."""

from qlbench.backends.base import (
    Backend,
    BackendDescriptor,
    BitOrder,
    NormalizedResult,
    RawResult,
    ResultMetadata,
    ResultStyle,
)
from qlbench.backends.jobs import Job, JobStore
from qlbench.backends.mock import SimulatedBackend
from qlbench.backends.normalize import encode, normalize
from qlbench.backends.registry import (
    BUILTIN_DESCRIPTORS,
    LOCAL_EXACT,
    MOCK_IONTRAP,
    MOCK_SUPERCONDUCTING,
    BackendRegistry,
    descriptor_from_config,
    registry,
)

__all__ = [
    "Backend",
    "BackendDescriptor",
    "BitOrder",
    "ResultStyle",
    "RawResult",
    "ResultMetadata",
    "NormalizedResult",
    "Job",
    "JobStore",
    "SimulatedBackend",
    "encode",
    "normalize",
    "BackendRegistry",
    "BUILTIN_DESCRIPTORS",
    "LOCAL_EXACT",
    "MOCK_IONTRAP",
    "MOCK_SUPERCONDUCTING",
    "descriptor_from_config",
    "registry",
]
