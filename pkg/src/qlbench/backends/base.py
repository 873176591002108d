"""
Backend abstraction.

A backend is described by a BackendDescriptor and returns results in its own
format (RawResult). Callers never read raw results directly: they go through
normalize() and receive a NormalizedResult in canonical bit order.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence
from datetime import datetime, timedelta, timezone
from enum import Enum
from typing import TYPE_CHECKING, Any, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from qlbench.circuit.ir import Circuit, CircuitStats
from qlbench.compiler.coupling import DeviceSpec
from qlbench.compiler.passes import CompiledCircuit
from qlbench.core.errors import CapabilityError
from qlbench.core.logging import get_logger
from qlbench.core.models import MAX_NODES, Counts, NoiseProfile, WeightedGraph
from qlbench.simulator.sampling import DOMAIN_JOB, derive_seed

if TYPE_CHECKING:
    from qlbench.backends.jobs import Job, JobStore

logger = get_logger(__name__)

CANONICAL_METADATA_KEYS = ("backend", "shots", "submitted_at", "completed_at")


class BitOrder(str, Enum):
    """Order of bits in returned outcome strings."""

    CANONICAL = "canonical"
    REVERSED = "reversed"


class ResultStyle(str, Enum):
    """Shape of a returned payload."""

    AGGREGATED = "aggregated"
    PER_SHOT = "per_shot"


class BackendDescriptor(BaseModel):
    """
    Capabilities and quirks of a backend.

    Attributes:
        name: Registry name
        supports_batching: Whether one job may carry several circuits
        bit_order: Bit order of returned outcome strings
        result_style: Aggregated histogram or per-shot list
        exposes_compiled: Whether compilation results are shown to users
        supports_exact: Whether the backend offers noise-free expectation values
        device_spec: Connectivity and native gates the backend compiles for
        noise: Gate and readout noise applied while sampling
        queue_delay: Simulated seconds between submission and completion
        metadata_keys: Raw metadata key per canonical key, None when not reported
        description: Free text
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    supports_batching: bool = False
    bit_order: BitOrder = BitOrder.CANONICAL
    result_style: ResultStyle = ResultStyle.AGGREGATED
    exposes_compiled: bool = False
    supports_exact: bool = False
    device_spec: DeviceSpec = Field(default_factory=DeviceSpec)
    noise: NoiseProfile = Field(default_factory=NoiseProfile)
    queue_delay: float = Field(default=0.0, ge=0.0)
    metadata_keys: dict[str, Optional[str]] = Field(
        default_factory=lambda: {key: key for key in CANONICAL_METADATA_KEYS}
    )
    description: str = ""

    @field_validator("metadata_keys")
    @classmethod
    def check_metadata_keys(cls, v: dict[str, Optional[str]]) -> dict[str, Optional[str]]:
        unknown = set(v) - set(CANONICAL_METADATA_KEYS)
        if unknown:
            raise ValueError(f"unknown canonical metadata keys: {sorted(unknown)}")
        return {key: v.get(key) for key in CANONICAL_METADATA_KEYS}

    def summary(self) -> dict[str, Any]:
        """Flat view used by `backends list`."""
        return {
            "name": self.name,
            "batching": self.supports_batching,
            "bit_order": self.bit_order.value,
            "result_style": self.result_style.value,
            "exposes_compiled": self.exposes_compiled,
            "exact": self.supports_exact,
            "coupling": self.device_spec.coupling,
            "native_set": self.device_spec.native_set.value,
            "p1": self.noise.p1,
            "p2": self.noise.p2,
            "p_readout": self.noise.p_readout,
            "queue_delay": self.queue_delay,
        }


class RawResult(BaseModel):
    """
    One circuit's result in the backend's own format.

    Attributes:
        payload: Aggregated {bitstring: count} or per-shot list of bitstrings
        metadata: Backend-specific key/value pairs
        compiled_stats: Compiled circuit statistics, only if the backend exposes them
    """

    model_config = ConfigDict(frozen=True)

    payload: Union[dict[str, int], list[str]]
    metadata: dict[str, str] = Field(default_factory=dict)
    compiled_stats: Optional[CircuitStats] = None


class ResultMetadata(BaseModel):
    """Canonical execution record; fields a backend does not report are None."""

    model_config = ConfigDict(frozen=True)

    backend: str
    shots: int = Field(gt=0)
    submitted_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    compiled_stats: Optional[CircuitStats] = None

    @property
    def queue_wait(self) -> Optional[float]:
        """Seconds between submission and completion, if both are known."""
        if self.submitted_at is None or self.completed_at is None:
            return None
        return (self.completed_at - self.submitted_at).total_seconds()


class NormalizedResult(BaseModel):
    """A result in canonical bit order with canonical metadata."""

    model_config = ConfigDict(frozen=True)

    counts: Counts
    metadata: ResultMetadata


class Backend(ABC):
    """
    Base class for backends.

    Subclasses implement execute() for a single circuit. Job handling,
    batching enforcement and seed assignment live here so that every backend
    applies them the same way.
    """

    def __init__(
        self,
        descriptor: BackendDescriptor,
        store: JobStore,
        max_qubits: int = MAX_NODES,
    ) -> None:
        self.descriptor = descriptor
        self.store = store
        self.max_qubits = max_qubits
        self.logger = logger.bind(backend=descriptor.name)

    @property
    def name(self) -> str:
        return self.descriptor.name

    @abstractmethod
    def execute(
        self, circuit: Circuit, shots: int, seed: int, submitted_at: datetime
    ) -> RawResult:
        """
        Run one circuit and return the result in this backend's format.

        Args:
            circuit: Logical circuit
            shots: Number of measurements
            seed: Per-circuit sampling seed
            submitted_at: Submission time of the enclosing job

        Returns:
            RawResult in the descriptor's bit order and result style
        """

    @abstractmethod
    def compile(self, circuit: Circuit) -> CompiledCircuit:
        """Compile a circuit for this backend's device."""

    def compiled_view(self, circuit: Circuit) -> CompiledCircuit:
        """
        Compilation result as shown to users.

        Raises:
            CapabilityError: If the backend does not expose compilation results
        """
        if not self.descriptor.exposes_compiled:
            raise CapabilityError(
                self.name,
                "compilation results are not exposed",
                remedy="inspect compilation on a backend that exposes it",
            )
        return self.compile(circuit)

    def require_exact(self) -> None:
        """
        Raises:
            CapabilityError: If the backend has no exact evaluation path
        """
        if not self.descriptor.supports_exact:
            raise CapabilityError(
                self.name,
                "exact expectation values are not available",
                remedy="use --backend local-exact for exact mode",
            )

    @abstractmethod
    def expectation(self, graph: WeightedGraph, circuit: Circuit) -> float:
        """
        Noise-free energy expectation value.

        Implementations call require_exact() first.

        Raises:
            CapabilityError: If the backend has no exact evaluation path
        """

    def submit(
        self,
        circuits: Sequence[Circuit],
        shots: int,
        seed: int,
        *,
        circuit_seeds: Optional[Sequence[int]] = None,
    ) -> Job:
        """
        Submit circuits as one job.

        Every circuit gets its own sampling seed: circuit_seeds when given,
        otherwise one derived from seed and the circuit's position.

        Raises:
            CapabilityError: If several circuits go to a non-batching backend
        """
        if not circuits:
            raise ValueError("a job needs at least one circuit")
        if len(circuits) > 1 and not self.descriptor.supports_batching:
            raise CapabilityError(
                self.name,
                f"batch of {len(circuits)} circuits rejected; backend does not support batching",
                remedy="submit circuits one per job",
            )
        if circuit_seeds is None:
            circuit_seeds = [derive_seed(seed, DOMAIN_JOB, i) for i in range(len(circuits))]
        elif len(circuit_seeds) != len(circuits):
            raise ValueError("one seed per circuit is required")

        submitted_at = datetime.now(timezone.utc)
        results = [
            self.execute(circuit, shots, circuit_seed, submitted_at)
            for circuit, circuit_seed in zip(circuits, circuit_seeds)
        ]
        ready_at = submitted_at + timedelta(seconds=self.descriptor.queue_delay)
        job = self.store.add(
            backend=self.name,
            shots=shots,
            seeds=list(circuit_seeds),
            submitted_at=submitted_at,
            ready_at=ready_at,
            results=results,
        )
        self.logger.debug("job_submitted", job_id=job.job_id, circuits=len(circuits), shots=shots)
        return job

    def fetch(self, job_id: str) -> list[RawResult]:
        """
        Raw results of a job, waiting for its simulated queue delay.

        Raises:
            JobNotFoundError: If the job is unknown
        """
        return self.store.wait(job_id)
