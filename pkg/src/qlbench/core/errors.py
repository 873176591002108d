"""
Exception hierarchy for qlbench.

Every error carries the process exit code the CLI maps it to.
"""

from __future__ import annotations

from typing import Optional


class QlbenchError(Exception):
    """Base class for all qlbench errors."""

    exit_code: int = 1


class DataError(QlbenchError):
    """Raised when input data or a stored artifact is malformed."""

    exit_code = 4


class ConfigError(DataError):
    """Raised when a settings file cannot be read or holds invalid values."""


class GraphError(DataError):
    """Raised when a MaxCut instance violates its invariants."""


class CircuitError(DataError):
    """Raised when a circuit or gate is invalid."""


class CountsError(DataError):
    """Raised when a measurement histogram is inconsistent."""


class NormalizationError(DataError):
    """Raised when a raw backend payload does not match its descriptor."""


class GridMismatchError(DataError):
    """Raised when two landscapes are not sampled on the same grid."""


class ProvenanceError(DataError):
    """Raised when a reference landscape does not belong to the compared landscape."""


class CheckpointError(DataError):
    """Raised when a checkpoint file belongs to a different run."""


class CapacityError(DataError):
    """Raised when a problem exceeds the simulator or oracle capacity."""


class CompilationError(DataError):
    """Raised when a circuit cannot be compiled for a device."""


class JobNotFoundError(DataError):
    """Raised when a job id is unknown to the job store."""


class CapabilityError(QlbenchError):
    """
    Raised when a request needs a capability the backend does not offer.

    Attributes:
        backend: Name of the backend that refused the request
        remedy: Hint on how to make the request acceptable
        point: Grid coordinates (gamma, beta) being evaluated, if any
    """

    exit_code = 3

    def __init__(self, backend: str, message: str, remedy: Optional[str] = None) -> None:
        self.backend = backend
        self.message = message
        self.remedy = remedy
        self.point: Optional[tuple[float, float]] = None
        super().__init__(message)

    def __str__(self) -> str:
        text = f"backend '{self.backend}': {self.message}"
        if self.point is not None:
            text += f" (at gamma={self.point[0]:.6f}, beta={self.point[1]:.6f})"
        if self.remedy:
            text += f". Hint: {self.remedy}"
        return text
