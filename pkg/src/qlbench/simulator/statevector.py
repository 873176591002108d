"""
Exact statevector simulation.

Qubit 0 is the most significant bit of the basis-state index, so the binary
rendering of an index is the canonical bit string (node 0 leftmost). A state
of n qubits is handled as a tensor of shape (2,) * n where axis q is qubit q.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from math import cos, sin, sqrt
from typing import Optional

import numpy as np

from qlbench.circuit.ir import Circuit, Gate, GateKind
from qlbench.core.errors import CapacityError, CircuitError
from qlbench.core.models import MAX_NODES, WeightedGraph
from qlbench.problem.maxcut import energy_table

NORM_TOLERANCE = 1e-9

_SQRT2_INV = 1 / sqrt(2)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
PAULIS: dict[int, np.ndarray] = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def rx_matrix(theta: float) -> np.ndarray:
    c, s = cos(theta / 2), sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


def gate_matrix(gate: Gate) -> np.ndarray:
    """2x2 unitary of a one-qubit gate."""
    if gate.kind is GateKind.H:
        return _H
    if gate.kind is GateKind.RX:
        return rx_matrix(gate.theta or 0.0)
    if gate.kind is GateKind.RZ:
        return rz_matrix(gate.theta or 0.0)
    raise CircuitError(f"{gate.kind.value} is not a one-qubit gate")


def _apply_1q(psi: np.ndarray, matrix: np.ndarray, q: int, n: int) -> np.ndarray:
    view = psi.reshape(2**q, 2, 2 ** (n - q - 1))
    return np.einsum("ij,ajb->aib", matrix, view).reshape(-1)


def _apply_cnot(psi: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    state = psi.reshape([2] * n).copy()
    index: list[object] = [slice(None)] * n
    index[control] = 1
    axis = target if target < control else target - 1
    block = state[tuple(index)]
    state[tuple(index)] = np.flip(block, axis=axis).copy()
    return state.reshape(-1)


def _apply_swap(psi: np.ndarray, a: int, b: int, n: int) -> np.ndarray:
    return np.ascontiguousarray(np.swapaxes(psi.reshape([2] * n), a, b)).reshape(-1)


@dataclass(frozen=True)
class _Op:
    kind: GateKind
    qubits: tuple[int, ...]
    matrix: Optional[np.ndarray]


def prepare(c: Circuit) -> list[_Op]:
    """Precompute gate matrices once per circuit."""
    return [
        _Op(g.kind, g.qubits, None if g.is_two_qubit else gate_matrix(g)) for g in c.gates
    ]


def _apply_op(psi: np.ndarray, op: _Op, n: int) -> np.ndarray:
    if op.matrix is not None:
        return _apply_1q(psi, op.matrix, op.qubits[0], n)
    if op.kind is GateKind.CNOT:
        return _apply_cnot(psi, op.qubits[0], op.qubits[1], n)
    return _apply_swap(psi, op.qubits[0], op.qubits[1], n)


def run_ops(
    ops: Sequence[_Op],
    n: int,
    insertions: Optional[Mapping[int, Sequence[tuple[int, int]]]] = None,
) -> np.ndarray:
    """
    Evolve |0...0> through prepared gates.

    Args:
        ops: Prepared gates
        n: Qubit count
        insertions: gate index -> [(qubit, pauli)] applied right after that gate,
            pauli 1/2/3 meaning X/Y/Z

    Returns:
        Final amplitude vector
    """
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1.0
    for index, op in enumerate(ops):
        psi = _apply_op(psi, op, n)
        if insertions and index in insertions:
            for q, pauli in insertions[index]:
                psi = _apply_1q(psi, PAULIS[pauli], q, n)
    return psi


@dataclass(frozen=True)
class Statevector:
    """
    Pure state of n qubits.

    Attributes:
        amplitudes: 2^n complex amplitudes, canonical index order
    """

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        size = self.amplitudes.shape[0]
        if self.amplitudes.ndim != 1 or size < 2 or size & (size - 1):
            raise CircuitError("amplitude vector length must be a power of two >= 2")
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise CircuitError(f"statevector norm {norm} deviates from 1")

    @classmethod
    def zero(cls, n: int) -> Statevector:
        """The all-zeros basis state |0...0>."""
        psi = np.zeros(2**n, dtype=complex)
        psi[0] = 1.0
        return cls(psi)

    @property
    def n(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, bits: str) -> complex:
        """Amplitude of a canonical bit string."""
        return complex(self.amplitudes[int(bits, 2)])


def apply_gate(s: Statevector, g: Gate) -> Statevector:
    """
    Apply one gate to a state.

    Raises:
        CircuitError: If an operand is outside the register
    """
    n = s.n
    if any(q >= n for q in g.qubits):
        raise CircuitError(f"{g} addresses a qubit outside a {n}-qubit state")
    op = _Op(g.kind, g.qubits, None if g.is_two_qubit else gate_matrix(g))
    return Statevector(_apply_op(s.amplitudes, op, n))


def check_capacity(c: Circuit, max_qubits: int = MAX_NODES) -> None:
    if c.qubit_count > max_qubits:
        raise CapacityError(
            f"circuit has {c.qubit_count} qubits, simulator capacity is {max_qubits}"
        )


def simulate_exact(c: Circuit, max_qubits: int = MAX_NODES) -> np.ndarray:
    """
    Exact measurement distribution of a circuit started in |0...0>.

    Returns:
        Probabilities of the 2^n outcomes in canonical index order

    Raises:
        CapacityError: If the circuit exceeds max_qubits
    """
    check_capacity(c, max_qubits)
    psi = run_ops(prepare(c), c.qubit_count)
    probs = np.abs(psi) ** 2
    return probs / probs.sum()


def expectation_exact(g: WeightedGraph, c: Circuit, max_qubits: int = MAX_NODES) -> float:
    """
    Exact energy expectation of the circuit's output distribution.

    Raises:
        CircuitError: If the circuit and graph sizes differ
    """
    if c.qubit_count != g.node_count:
        raise CircuitError(
            f"circuit has {c.qubit_count} qubits, graph has {g.node_count} nodes"
        )
    return float(simulate_exact(c, max_qubits) @ energy_table(g))
