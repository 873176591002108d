"""
Tests for backend descriptors, result normalization, the job store and the registry.
"""

import json
from datetime import datetime, timedelta, timezone
from math import pi

import numpy as np
import pytest

from qlbench.backends import (
    LOCAL_EXACT,
    MOCK_IONTRAP,
    MOCK_SUPERCONDUCTING,
    Backend,
    BackendDescriptor,
    BackendRegistry,
    BitOrder,
    JobStore,
    RawResult,
    ResultMetadata,
    ResultStyle,
    SimulatedBackend,
    descriptor_from_config,
    encode,
    normalize,
    registry,
)
from qlbench.circuit import QaoaParams, build_qaoa_circuit
from qlbench.core.config import Settings
from qlbench.core.errors import (
    CapabilityError,
    DataError,
    JobNotFoundError,
    NormalizationError,
)
from qlbench.core.models import Counts, NoiseProfile

REVERSED_AGGREGATED = BackendDescriptor(
    name="reversed-aggregated",
    bit_order=BitOrder.REVERSED,
    result_style=ResultStyle.AGGREGATED,
)
CANONICAL_PER_SHOT = BackendDescriptor(
    name="canonical-per-shot",
    bit_order=BitOrder.CANONICAL,
    result_style=ResultStyle.PER_SHOT,
)


def paper_circuit(graph, gamma=pi / 4, beta=pi / 8):
    return build_qaoa_circuit(graph, QaoaParams.layers([gamma], [beta]))


class CountingBackend(SimulatedBackend):
    """Simulated backend that counts executed circuits."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.executions = 0

    def execute(self, circuit, shots, seed, submitted_at):
        self.executions += 1
        return super().execute(circuit, shots, seed, submitted_at)


class TestDescriptor:
    """Test backend descriptors."""

    def test_metadata_keys_completed(self):
        """Test missing canonical keys map to None."""
        d = BackendDescriptor(name="x", metadata_keys={"shots": "n"})
        assert d.metadata_keys == {
            "backend": None,
            "shots": "n",
            "submitted_at": None,
            "completed_at": None,
        }

    def test_unknown_metadata_key(self):
        """Test only canonical keys can be mapped."""
        with pytest.raises(Exception):
            BackendDescriptor(name="x", metadata_keys={"colour": "c"})

    def test_negative_delay(self):
        """Test queue delays are nonnegative."""
        with pytest.raises(Exception):
            BackendDescriptor(name="x", queue_delay=-1.0)

    def test_summary(self):
        """Test the flat listing view."""
        summary = MOCK_SUPERCONDUCTING.summary()
        assert summary["batching"] is False
        assert summary["bit_order"] == "reversed"
        assert summary["result_style"] == "per_shot"
        assert summary["coupling"] == "linear"
        assert summary["native_set"] == "restricted"

    def test_builtin_capabilities(self):
        """Test the bundled backends differ in their quirks."""
        assert LOCAL_EXACT.supports_exact
        assert not MOCK_IONTRAP.supports_exact
        assert MOCK_IONTRAP.supports_batching
        assert not MOCK_SUPERCONDUCTING.supports_batching
        assert not MOCK_SUPERCONDUCTING.exposes_compiled


class TestNormalize:
    """Test conversion of raw results to canonical counts."""

    def test_reversed_aggregated(self):
        """Test reversed keys are flipped into canonical order."""
        raw = RawResult(payload={"10000": 7})
        result = normalize(raw, REVERSED_AGGREGATED)
        assert result.counts.histogram == {"00001": 7}
        assert result.counts.shots == 7

    def test_per_shot(self):
        """Test per-shot lists are aggregated."""
        raw = RawResult(payload=["01001", "01001", "10110"])
        result = normalize(raw, CANONICAL_PER_SHOT)
        assert result.counts.histogram == {"01001": 2, "10110": 1}

    def test_reversed_per_shot(self):
        """Test per-shot strings are flipped too."""
        raw = RawResult(payload=["00011", "00011"], metadata={"backend_name": "sc"})
        result = normalize(raw, MOCK_SUPERCONDUCTING)
        assert result.counts.histogram == {"11000": 2}
        assert result.metadata.backend == "sc"

    def test_style_mismatch(self):
        """Test an aggregated payload on a per-shot backend is rejected."""
        with pytest.raises(NormalizationError):
            normalize(RawResult(payload={"01": 1}), CANONICAL_PER_SHOT)
        with pytest.raises(NormalizationError):
            normalize(RawResult(payload=["01"]), REVERSED_AGGREGATED)

    def test_shots_mismatch(self):
        """Test reported shots must equal the payload size."""
        raw = RawResult(payload={"01": 3}, metadata={"num_shots": "4"})
        with pytest.raises(NormalizationError):
            normalize(raw, MOCK_IONTRAP)

    def test_shots_not_integer(self):
        """Test reported shots must parse."""
        raw = RawResult(payload={"01": 3}, metadata={"num_shots": "three"})
        with pytest.raises(NormalizationError):
            normalize(raw, MOCK_IONTRAP)

    def test_bad_timestamp(self):
        """Test timestamps must parse."""
        raw = RawResult(payload={"01": 3}, metadata={"request_time": "yesterday"})
        with pytest.raises(NormalizationError):
            normalize(raw, MOCK_IONTRAP)

    def test_empty_payload(self):
        """Test an empty payload cannot be normalized."""
        with pytest.raises(NormalizationError):
            normalize(RawResult(payload=[]), CANONICAL_PER_SHOT)

    def test_backend_name_fallback(self):
        """Test the descriptor name is used when the backend is not reported."""
        result = normalize(RawResult(payload={"1": 1}), REVERSED_AGGREGATED)
        assert result.metadata.backend == "reversed-aggregated"
        assert result.metadata.queue_wait is None

    @pytest.mark.parametrize(
        "descriptor",
        [LOCAL_EXACT, MOCK_IONTRAP, MOCK_SUPERCONDUCTING, REVERSED_AGGREGATED, CANONICAL_PER_SHOT],
        ids=lambda d: d.name,
    )
    def test_encode_inverts(self, descriptor):
        """Test normalize undoes encode for every backend format."""
        counts = Counts(shots=6, histogram={"00011": 1, "01001": 3, "10110": 2})
        start = datetime(2024, 1, 1, tzinfo=timezone.utc)
        metadata = ResultMetadata(
            backend=descriptor.name,
            shots=6,
            submitted_at=start,
            completed_at=start + timedelta(seconds=2),
        )
        result = normalize(encode(counts, descriptor, metadata), descriptor)
        assert result.counts == counts
        assert result.metadata.backend == descriptor.name
        assert result.metadata.shots == 6

    @pytest.mark.parametrize("bit_order", list(BitOrder))
    @pytest.mark.parametrize("result_style", list(ResultStyle))
    def test_random_counts_round_trip(self, bit_order, result_style):
        """Test normalize undoes encode on random histograms for every quirk combination."""
        descriptor = BackendDescriptor(
            name=f"{bit_order.value}-{result_style.value}",
            bit_order=bit_order,
            result_style=result_style,
        )
        rng = np.random.default_rng(20240611)
        for _ in range(100):
            width = int(rng.integers(1, 8))
            shots = int(rng.integers(1, 300))
            outcomes = rng.integers(0, 2**width, size=shots)
            counts = Counts.from_samples(format(int(k), f"0{width}b") for k in outcomes)
            metadata = ResultMetadata(backend=descriptor.name, shots=shots)
            result = normalize(encode(counts, descriptor, metadata), descriptor)
            assert result.counts == counts
            assert result.metadata.shots == shots

    def test_timestamps_survive(self):
        """Test reported timestamps yield the queue wait."""
        start = datetime(2024, 1, 1, tzinfo=timezone.utc)
        metadata = ResultMetadata(
            backend="mock-iontrap",
            shots=1,
            submitted_at=start,
            completed_at=start + timedelta(seconds=2),
        )
        raw = encode(Counts(shots=1, histogram={"0": 1}), MOCK_IONTRAP, metadata)
        assert set(raw.metadata) == {"device", "num_shots", "request_time", "finish_time"}
        assert normalize(raw, MOCK_IONTRAP).metadata.queue_wait == 2.0

    def test_unreported_timestamps(self):
        """Test a backend without timestamps normalizes them to None."""
        start = datetime(2024, 1, 1, tzinfo=timezone.utc)
        metadata = ResultMetadata(
            backend="mock-superconducting", shots=1, submitted_at=start, completed_at=start
        )
        raw = encode(Counts(shots=1, histogram={"0": 1}), MOCK_SUPERCONDUCTING, metadata)
        assert set(raw.metadata) == {"backend_name", "shots_taken"}
        result = normalize(raw, MOCK_SUPERCONDUCTING)
        assert result.metadata.submitted_at is None
        assert result.metadata.queue_wait is None


class TestJobStore:
    """Test the job store."""

    def _add(self, store, backend="local-exact"):
        now = datetime.now(timezone.utc)
        return store.add(
            backend=backend,
            shots=10,
            seeds=[1],
            submitted_at=now,
            ready_at=now,
            results=[RawResult(payload={"01": 10})],
        )

    def test_add_and_get(self, job_store):
        """Test jobs are retrievable by id."""
        job = self._add(job_store)
        assert job_store.get(job.job_id) == job
        assert job.circuit_count == 1
        assert job.is_ready()
        assert len(job_store) == 1

    def test_unknown_job(self, job_store):
        """Test unknown ids raise JobNotFoundError."""
        with pytest.raises(JobNotFoundError):
            job_store.get("missing")

    def test_unique_ids(self, job_store):
        """Test every job gets its own id."""
        ids = {self._add(job_store).job_id for _ in range(20)}
        assert len(ids) == 20

    def test_list_filtered(self, job_store):
        """Test listing by backend."""
        self._add(job_store, "a")
        self._add(job_store, "b")
        self._add(job_store, "a")
        assert len(job_store.list_jobs()) == 3
        assert {j.backend for j in job_store.list_jobs("a")} == {"a"}
        assert len(job_store.list_jobs("a")) == 2

    def test_persistence(self, tmp_path):
        """Test a file-backed store is reloaded by a new instance."""
        path = tmp_path / "jobs.jsonl"
        job = self._add(JobStore(path))
        reloaded = JobStore(path)
        assert reloaded.get(job.job_id) == job
        assert len(path.read_text().splitlines()) == 1

    def test_corrupt_file(self, tmp_path):
        """Test a corrupt store file raises DataError."""
        path = tmp_path / "jobs.jsonl"
        path.write_text("{not json\n")
        with pytest.raises(DataError):
            JobStore(path)

    def test_wait_for_delay(self, job_store):
        """Test wait() blocks until the job is ready."""
        now = datetime.now(timezone.utc)
        job = job_store.add(
            backend="x",
            shots=1,
            seeds=[0],
            submitted_at=now,
            ready_at=now + timedelta(seconds=0.05),
            results=[RawResult(payload={"0": 1})],
        )
        results = job_store.wait(job.job_id)
        assert datetime.now(timezone.utc) >= job.ready_at
        assert results[0].payload == {"0": 1}


class TestSimulatedBackend:
    """Test the simulated backends."""

    def test_submit_and_fetch(self, paper_graph, job_store):
        """Test a batched job returns one result per circuit."""
        backend = SimulatedBackend(MOCK_IONTRAP, job_store)
        circuits = [paper_circuit(paper_graph), paper_circuit(paper_graph, 0.5, 0.2)]
        job = backend.submit(circuits, 100, seed=1)
        results = backend.fetch(job.job_id)
        assert len(results) == 2
        for raw in results:
            normalized = normalize(raw, MOCK_IONTRAP)
            assert normalized.counts.shots == 100
            assert normalized.counts.width == 5
            assert normalized.metadata.queue_wait == pytest.approx(0.05)
            assert normalized.metadata.compiled_stats is not None

    def test_batch_rejected(self, paper_graph, job_store):
        """Test a non-batching backend refuses a batch before running anything."""
        backend = CountingBackend(MOCK_SUPERCONDUCTING, job_store)
        circuits = [paper_circuit(paper_graph), paper_circuit(paper_graph)]
        with pytest.raises(CapabilityError) as exc_info:
            backend.submit(circuits, 100, seed=1)
        assert exc_info.value.backend == "mock-superconducting"
        assert exc_info.value.exit_code == 3
        assert backend.executions == 0
        assert len(job_store) == 0

        backend.submit(circuits[:1], 100, seed=1)
        assert backend.executions == 1

    def test_single_circuit_on_non_batching(self, paper_graph, job_store):
        """Test one circuit per job is accepted and reported per shot."""
        backend = SimulatedBackend(MOCK_SUPERCONDUCTING, job_store)
        job = backend.submit([paper_circuit(paper_graph)], 50, seed=2)
        (raw,) = backend.fetch(job.job_id)
        assert isinstance(raw.payload, list)
        assert len(raw.payload) == 50
        assert raw.compiled_stats is None

    def test_deterministic(self, paper_graph, job_store):
        """Test identical seeds reproduce identical raw results."""
        backend = SimulatedBackend(MOCK_IONTRAP, job_store)
        circuit = paper_circuit(paper_graph)
        first = backend.fetch(backend.submit([circuit], 200, seed=9).job_id)
        second = backend.fetch(backend.submit([circuit], 200, seed=9).job_id)
        assert first[0].payload == second[0].payload

    def test_explicit_seeds(self, paper_graph, job_store):
        """Test explicit per-circuit seeds are recorded."""
        backend = SimulatedBackend(LOCAL_EXACT, job_store)
        job = backend.submit([paper_circuit(paper_graph)], 10, seed=0, circuit_seeds=[42])
        assert job.seeds == (42,)

    def test_compiled_view(self, paper_graph, job_store):
        """Test compilation is shown only where exposed."""
        circuit = paper_circuit(paper_graph)
        iontrap = SimulatedBackend(MOCK_IONTRAP, job_store)
        assert iontrap.compiled_view(circuit).stats.two_qubit_count == 10
        superconducting = SimulatedBackend(MOCK_SUPERCONDUCTING, job_store)
        with pytest.raises(CapabilityError):
            superconducting.compiled_view(circuit)

    def test_exact_only_on_local(self, paper_graph, job_store):
        """Test exact expectations need an exact-capable backend."""
        circuit = paper_circuit(paper_graph, 0.0, 0.3)
        exact = SimulatedBackend(LOCAL_EXACT, job_store)
        assert exact.expectation(paper_graph, circuit) == pytest.approx(-4.5, abs=1e-9)
        iontrap = SimulatedBackend(MOCK_IONTRAP, job_store)
        with pytest.raises(CapabilityError) as exc_info:
            iontrap.expectation(paper_graph, circuit)
        assert "local-exact" in str(exc_info.value)

    def test_backend_must_implement_expectation(self, job_store):
        """Test a backend without an exact path cannot be instantiated."""

        class PartialBackend(Backend):
            def execute(self, circuit, shots, seed, submitted_at):
                raise AssertionError("not reached")

            def compile(self, circuit):
                raise AssertionError("not reached")

        with pytest.raises(TypeError):
            PartialBackend(MOCK_IONTRAP, job_store)

    def test_readout_reversal_transparent(self, paper_graph, job_store):
        """Test a noiseless reversed per-shot backend matches the canonical one."""
        circuit = paper_circuit(paper_graph)
        quiet = MOCK_SUPERCONDUCTING.model_copy(
            update={"noise": NoiseProfile(), "device_spec": LOCAL_EXACT.device_spec}
        )
        reversed_backend = SimulatedBackend(quiet, job_store)
        canonical_backend = SimulatedBackend(LOCAL_EXACT, job_store)
        a = normalize(
            reversed_backend.fetch(reversed_backend.submit([circuit], 300, seed=4).job_id)[0],
            quiet,
        )
        b = normalize(
            canonical_backend.fetch(canonical_backend.submit([circuit], 300, seed=4).job_id)[0],
            LOCAL_EXACT,
        )
        assert a.counts == b.counts


class TestRegistry:
    """Test the backend registry."""

    def test_builtins(self, job_store):
        """Test the three bundled backends are listed in order."""
        reg = BackendRegistry(Settings(), job_store)
        assert reg.names() == ["local-exact", "mock-iontrap", "mock-superconducting"]

    def test_unknown_backend(self, job_store):
        """Test unknown names list the available backends."""
        reg = BackendRegistry(Settings(), job_store)
        with pytest.raises(ValueError, match="Available backends"):
            reg.get("quantum-toaster")

    def test_create_shares_store(self, job_store):
        """Test created backends use the registry's store."""
        reg = BackendRegistry(Settings(), job_store)
        backend = reg.create("mock-iontrap")
        assert isinstance(backend, SimulatedBackend)
        assert backend.store is job_store

    def test_custom_backend_from_settings(self, job_store):
        """Test config entries add backends and may reference noise profiles."""
        settings = Settings(
            noise_profiles={"lab": NoiseProfile(p1=0.002, p2=0.02, label="lab")},
            backends=[{"name": "lab-device", "supports_batching": True, "noise": "lab"}],
        )
        reg = BackendRegistry(settings, job_store)
        assert reg.get("lab-device").noise.label == "lab"

    def test_custom_backend_replaces_builtin(self, job_store):
        """Test a config entry with a bundled name replaces it."""
        settings = Settings(backends=[{"name": "mock-iontrap", "queue_delay": 0.0}])
        reg = BackendRegistry(settings, job_store)
        assert reg.get("mock-iontrap").queue_delay == 0.0
        assert reg.names().count("mock-iontrap") == 1

    def test_unknown_noise_profile(self):
        """Test referencing an undefined profile raises DataError."""
        with pytest.raises(DataError):
            descriptor_from_config({"name": "x", "noise": "nowhere"}, {})

    def test_invalid_entry(self):
        """Test invalid entries raise DataError."""
        with pytest.raises(DataError):
            descriptor_from_config({"name": "x", "bit_order": "sideways"}, {})

    def test_registry_function(self):
        """Test the module-level listing."""
        assert [d.name for d in registry(Settings())][:3] == [
            "local-exact",
            "mock-iontrap",
            "mock-superconducting",
        ]

    def test_store_from_settings(self, tmp_path, paper_graph):
        """Test the configured job store path is used."""
        path = tmp_path / "jobs.jsonl"
        settings = Settings(execution={"job_store": str(path)})
        reg = BackendRegistry(settings)
        backend = reg.create("local-exact")
        backend.submit([paper_circuit(paper_graph)], 5, seed=0)
        assert json.loads(path.read_text().splitlines()[0])["backend"] == "local-exact"
