"""
Registry of available backends.

Three backends are bundled; more can be defined in the settings file under
`backends`. A custom backend with the name of a bundled one replaces it.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Optional

from pydantic import ValidationError

from qlbench.backends.base import Backend, BackendDescriptor, BitOrder, ResultStyle
from qlbench.backends.jobs import JobStore
from qlbench.backends.mock import SimulatedBackend
from qlbench.compiler.coupling import DeviceSpec, NativeSet
from qlbench.core.config import Settings, get_settings
from qlbench.core.errors import DataError
from qlbench.core.logging import get_logger
from qlbench.core.models import NoiseProfile

logger = get_logger(__name__)

LOCAL_EXACT = BackendDescriptor(
    name="local-exact",
    supports_batching=True,
    supports_exact=True,
    exposes_compiled=True,
    device_spec=DeviceSpec(coupling="full", native_set=NativeSet.EXTENDED, label="local"),
    noise=NoiseProfile(),
    queue_delay=0.0,
    description="Noise-free local simulator with exact expectation values",
)

MOCK_IONTRAP = BackendDescriptor(
    name="mock-iontrap",
    supports_batching=True,
    bit_order=BitOrder.CANONICAL,
    result_style=ResultStyle.AGGREGATED,
    exposes_compiled=True,
    device_spec=DeviceSpec(coupling="full", native_set=NativeSet.EXTENDED, label="iontrap"),
    noise=NoiseProfile(p1=0.001, p2=0.01, p_readout=0.005, label="iontrap"),
    queue_delay=0.05,
    metadata_keys={
        "backend": "device",
        "shots": "num_shots",
        "submitted_at": "request_time",
        "completed_at": "finish_time",
    },
    description="All-to-all device with low noise and batched jobs",
)

MOCK_SUPERCONDUCTING = BackendDescriptor(
    name="mock-superconducting",
    supports_batching=False,
    bit_order=BitOrder.REVERSED,
    result_style=ResultStyle.PER_SHOT,
    exposes_compiled=False,
    device_spec=DeviceSpec(
        coupling="linear", native_set=NativeSet.RESTRICTED, label="superconducting"
    ),
    noise=NoiseProfile(p1=0.005, p2=0.03, p_readout=0.02, label="superconducting"),
    queue_delay=0.005,
    metadata_keys={
        "backend": "backend_name",
        "shots": "shots_taken",
        "submitted_at": None,
        "completed_at": None,
    },
    description="Linear-chain device with higher noise, one circuit per job",
)

BUILTIN_DESCRIPTORS = (LOCAL_EXACT, MOCK_IONTRAP, MOCK_SUPERCONDUCTING)


def descriptor_from_config(
    entry: Mapping[str, Any],
    noise_profiles: Mapping[str, NoiseProfile],
) -> BackendDescriptor:
    """
    Build a descriptor from a config entry.

    The entry's "noise" may be an inline profile or the name of a profile in
    noise_profiles.

    Raises:
        DataError: If the entry is invalid or names an unknown profile
    """
    data = dict(entry)
    noise = data.get("noise")
    if isinstance(noise, str):
        if noise not in noise_profiles:
            raise DataError(
                f"backend '{data.get('name')}' references unknown noise profile '{noise}'"
            )
        data["noise"] = noise_profiles[noise]
    try:
        return BackendDescriptor.model_validate(data)
    except ValidationError as e:
        raise DataError(f"invalid backend definition '{data.get('name')}': {e}") from e


class BackendRegistry:
    """
    Registry and factory for backends.

    Holds the descriptors of all known backends and creates backends that
    share one job store.
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        store: Optional[JobStore] = None,
    ) -> None:
        self.settings = settings or get_settings()
        self.store = store or JobStore(
            self.settings.execution.job_store,
            poll_interval=self.settings.execution.poll_interval,
        )
        self._descriptors: dict[str, BackendDescriptor] = {d.name: d for d in BUILTIN_DESCRIPTORS}
        for entry in self.settings.backends:
            self.register(descriptor_from_config(entry, self.settings.noise_profiles))

    def register(self, descriptor: BackendDescriptor) -> None:
        """Add a backend, replacing any backend of the same name."""
        if descriptor.name in self._descriptors:
            logger.info("backend_replaced", name=descriptor.name)
        self._descriptors[descriptor.name] = descriptor

    def names(self) -> list[str]:
        return list(self._descriptors)

    def descriptors(self) -> list[BackendDescriptor]:
        return list(self._descriptors.values())

    def get(self, name: str) -> BackendDescriptor:
        """
        Descriptor of a backend.

        Raises:
            ValueError: If the backend is unknown
        """
        if name not in self._descriptors:
            raise ValueError(
                f"Unknown backend: {name}. Available backends: {', '.join(self._descriptors)}"
            )
        return self._descriptors[name]

    def create(self, name: str) -> Backend:
        """Create a simulated backend bound to this registry's job store."""
        descriptor = self.get(name)
        logger.debug("backend_created", name=name)
        return SimulatedBackend(
            descriptor, self.store, max_qubits=self.settings.execution.max_qubits
        )


def registry(settings: Optional[Settings] = None) -> list[BackendDescriptor]:
    """Descriptors of all available backends."""
    return BackendRegistry(settings).descriptors()
