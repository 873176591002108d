"""
Simulated backends.

Each backend compiles for its device, samples the compiled circuit with its
noise profile, maps outcomes back to logical qubits and then renders the
counts in its own result format.
"""

from __future__ import annotations

from datetime import datetime, timedelta

from qlbench.backends.base import Backend, RawResult, ResultMetadata
from qlbench.backends.normalize import encode
from qlbench.circuit.ir import Circuit
from qlbench.compiler.passes import CompiledCircuit, compile_circuit, relabel_outcomes
from qlbench.core.models import WeightedGraph
from qlbench.simulator.sampling import counts_from_outcomes, sample_outcomes
from qlbench.simulator.statevector import expectation_exact


class SimulatedBackend(Backend):
    """Backend executing on the local statevector simulator."""

    def compile(self, circuit: Circuit) -> CompiledCircuit:
        return compile_circuit(circuit, self.descriptor.device_spec)

    def execute(
        self, circuit: Circuit, shots: int, seed: int, submitted_at: datetime
    ) -> RawResult:
        compiled = self.compile(circuit)
        outcomes = sample_outcomes(
            compiled.circuit, shots, self.descriptor.noise, seed, self.max_qubits
        )
        logical = relabel_outcomes(outcomes, compiled.final_layout)
        counts = counts_from_outcomes(logical, circuit.qubit_count)
        metadata = ResultMetadata(
            backend=self.name,
            shots=shots,
            submitted_at=submitted_at,
            completed_at=submitted_at + timedelta(seconds=self.descriptor.queue_delay),
            compiled_stats=compiled.stats,
        )
        return encode(counts, self.descriptor, metadata)

    def expectation(self, graph: WeightedGraph, circuit: Circuit) -> float:
        self.require_exact()
        return expectation_exact(graph, circuit, self.max_qubits)
