"""
Compilation passes: native-gate decomposition and greedy SWAP routing.

Routing keeps the identity initial layout. For a two-qubit gate on
uncoupled physical qubits, the operand with the lower logical index walks
along a shortest coupling-graph path (lexicographically smallest among equal
lengths) via SWAPs until it sits next to the other operand. The final
logical -> physical layout is reported so measurement outcomes can be
relabeled to logical qubits.

Equivalence everywhere is up to global phase.
"""

from __future__ import annotations

from collections.abc import Sequence
from math import pi
from typing import Any

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from qlbench.circuit.ir import Circuit, CircuitStats, Gate, GateKind, circuit_stats, make_circuit
from qlbench.compiler.coupling import CouplingMap, DeviceSpec
from qlbench.core.errors import CompilationError
from qlbench.core.logging import get_logger

logger = get_logger(__name__)

Layout = tuple[int, ...]


class CompiledCircuit(BaseModel):
    """
    A circuit rewritten for a device.

    Attributes:
        circuit: Native, coupling-compliant circuit on physical qubits
        final_layout: final_layout[logical] = physical qubit at measurement
        stats: Statistics of the compiled circuit
    """

    model_config = ConfigDict(frozen=True)

    circuit: Circuit
    final_layout: Layout
    stats: CircuitStats

    @model_validator(mode="after")
    def check_layout(self) -> CompiledCircuit:
        """The layout is a permutation of the register."""
        if sorted(self.final_layout) != list(range(self.circuit.qubit_count)):
            raise ValueError(f"layout {self.final_layout} is not a permutation")
        return self

    def to_dict(self) -> dict[str, Any]:
        """Circuit JSON extended with "layout" and "stats"."""
        data = self.circuit.to_dict()
        data["layout"] = list(self.final_layout)
        data["stats"] = self.stats.model_dump()
        return data


def decompose(c: Circuit, spec: DeviceSpec) -> Circuit:
    """
    Rewrite a circuit into the device's native gates.

    Rules: H -> RX(pi/2) RZ(pi/2) RX(pi/2); SWAP -> CNOT(a,b) CNOT(b,a) CNOT(a,b).

    Raises:
        CompilationError: If a gate is neither native nor decomposable
    """
    native = spec.native_set.gates
    gates: list[Gate] = []
    for gate in c.gates:
        if gate.kind in native:
            gates.append(gate)
        elif gate.kind is GateKind.H and {GateKind.RX, GateKind.RZ} <= native:
            q = gate.qubits[0]
            gates.extend([Gate.RX(q, pi / 2), Gate.RZ(q, pi / 2), Gate.RX(q, pi / 2)])
        elif gate.kind is GateKind.SWAP and GateKind.CNOT in native:
            a, b = gate.qubits
            gates.extend([Gate.CNOT(a, b), Gate.CNOT(b, a), Gate.CNOT(a, b)])
        else:
            raise CompilationError(
                f"no decomposition of {gate.kind.value} into {spec.native_set.value} gates"
            )
    return make_circuit(c.qubit_count, gates)


def route(c: Circuit, coupling: CouplingMap) -> tuple[Circuit, Layout]:
    """
    Insert SWAPs so that every two-qubit gate acts on a coupled pair.

    Args:
        c: Logical circuit
        coupling: Physical connectivity with the same register size

    Returns:
        (physical circuit, final logical -> physical layout)

    Raises:
        CompilationError: If sizes differ or the coupling graph is disconnected
    """
    n = c.qubit_count
    if coupling.qubit_count != n:
        raise CompilationError(
            f"coupling map has {coupling.qubit_count} qubits, circuit has {n}"
        )
    if coupling.is_full:
        return c, tuple(range(n))

    graph = coupling.graph()
    if not coupling.is_connected():
        raise CompilationError("coupling map is disconnected; routing impossible")

    l2p = list(range(n))
    p2l = list(range(n))
    gates: list[Gate] = []
    swaps = 0

    for gate in c.gates:
        if gate.is_two_qubit and not coupling.are_coupled(*(l2p[q] for q in gate.qubits)):
            mover, anchor = sorted(gate.qubits)
            path = min(nx.all_shortest_paths(graph, l2p[mover], l2p[anchor]))
            for x, y in zip(path[:-2], path[1:-1]):
                gates.append(Gate.SWAP(x, y))
                lx, ly = p2l[x], p2l[y]
                p2l[x], p2l[y] = ly, lx
                l2p[lx], l2p[ly] = y, x
                swaps += 1
        physical = tuple(l2p[q] for q in gate.qubits)
        gates.append(gate.model_copy(update={"qubits": physical}))

    logger.debug("routing_swaps_inserted", swaps=swaps, qubits=n)
    return make_circuit(n, gates), tuple(l2p)


def compile_circuit(c: Circuit, spec: DeviceSpec) -> CompiledCircuit:
    """
    Route then decompose a circuit for a device.

    Deterministic: identical inputs give identical output.
    """
    routed, layout = route(c, spec.coupling_for(c.qubit_count))
    native = decompose(routed, spec)
    return CompiledCircuit(circuit=native, final_layout=layout, stats=circuit_stats(native))


def relabel_bitstring(bits: str, layout: Sequence[int]) -> str:
    """Physical outcome string -> logical outcome string."""
    return "".join(bits[p] for p in layout)


def relabel_distribution(probs: np.ndarray, layout: Sequence[int]) -> np.ndarray:
    """Physical outcome distribution -> logical outcome distribution."""
    n = len(layout)
    indices = np.arange(2**n, dtype=np.int64)
    physical_bits = (indices[:, None] >> (n - 1 - np.arange(n))) & 1
    logical = np.zeros(2**n, dtype=np.int64)
    for q, p in enumerate(layout):
        logical |= physical_bits[:, p] << (n - 1 - q)
    out = np.zeros_like(probs)
    out[logical] = probs
    return out


def relabel_outcomes(outcomes: np.ndarray, layout: Sequence[int]) -> np.ndarray:
    """Physical outcome indices -> logical outcome indices."""
    n = len(layout)
    logical = np.zeros_like(outcomes)
    for q, p in enumerate(layout):
        logical |= ((outcomes >> (n - 1 - p)) & 1) << (n - 1 - q)
    return logical


def is_coupling_compliant(c: Circuit, coupling: CouplingMap) -> bool:
    """Every two-qubit gate acts on a coupled pair."""
    return all(coupling.are_coupled(*g.qubits) for g in c.gates if g.is_two_qubit)


def is_native(c: Circuit, spec: DeviceSpec) -> bool:
    """Every gate belongs to the device's native set."""
    return all(g.kind in spec.native_set.gates for g in c.gates)


