"""Gate-level circuits and the QAOA builder."""

from qlbench.circuit.ir import Circuit, CircuitStats, Gate, GateKind, circuit_stats, make_circuit
from qlbench.circuit.qaoa import QaoaParams, build_qaoa_circuit

__all__ = [
    "Circuit",
    "CircuitStats",
    "Gate",
    "GateKind",
    "circuit_stats",
    "make_circuit",
    "QaoaParams",
    "build_qaoa_circuit",
]
