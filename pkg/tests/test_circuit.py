"""
Tests for the gate-level circuit model and the QAOA builder.
"""

from math import pi

import pytest

from qlbench.circuit import (
    Circuit,
    Gate,
    GateKind,
    QaoaParams,
    build_qaoa_circuit,
    circuit_stats,
    make_circuit,
)
from qlbench.core.errors import CircuitError


class TestGate:
    """Test gate validation."""

    def test_constructors(self):
        """Test the named constructors."""
        assert Gate.H(2).kind is GateKind.H
        assert Gate.RX(0, 0.5).theta == 0.5
        assert Gate.CNOT(1, 0).qubits == (1, 0)

    def test_cnot_distinct_operands(self):
        """Test two-qubit gates need distinct operands."""
        with pytest.raises(Exception):
            Gate.CNOT(1, 1)

    def test_rotation_needs_angle(self):
        """Test RX and RZ require an angle."""
        with pytest.raises(Exception):
            Gate(kind=GateKind.RZ, qubits=(0,))

    def test_h_takes_no_angle(self):
        """Test H rejects an angle."""
        with pytest.raises(Exception):
            Gate(kind=GateKind.H, qubits=(0,), theta=1.0)

    def test_arity(self):
        """Test operand count matches the gate kind."""
        with pytest.raises(Exception):
            Gate(kind=GateKind.SWAP, qubits=(0,))

    def test_str(self):
        """Test the compact rendering."""
        assert str(Gate.CNOT(1, 0)) == "CNOT(1,0)"


class TestCircuit:
    """Test circuits and their serialization."""

    def test_operand_outside_register(self):
        """Test gates must address the register."""
        with pytest.raises(CircuitError):
            make_circuit(2, [Gate.H(2)])

    def test_to_dict_format(self):
        """Test the {"qubits", "gates"} JSON layout."""
        c = make_circuit(2, [Gate.H(0), Gate.RZ(1, 0.25), Gate.CNOT(0, 1)])
        assert c.to_dict() == {
            "qubits": 2,
            "gates": [
                {"g": "H", "q": [0]},
                {"g": "RZ", "q": [1], "theta": 0.25},
                {"g": "CNOT", "q": [0, 1]},
            ],
        }
        assert Circuit.from_dict(c.to_dict()) == c

    def test_from_bare_gate_list(self):
        """Test a bare gate list is sized by its largest operand."""
        c = Circuit.from_dict([{"g": "H", "q": [0]}, {"g": "CNOT", "q": [0, 3]}])
        assert c.qubit_count == 4
        assert len(c) == 2

    def test_malformed_record(self):
        """Test malformed records raise CircuitError."""
        with pytest.raises(CircuitError):
            Circuit.from_dict({"qubits": 1, "gates": [{"g": "TOFFOLI", "q": [0]}]})


class TestCircuitStats:
    """Test depth and gate counting."""

    def test_stats(self):
        """Test as-soon-as-possible layering."""
        c = make_circuit(3, [Gate.H(0), Gate.H(1), Gate.CNOT(0, 1), Gate.H(2)])
        stats = circuit_stats(c)
        assert stats.depth == 2
        assert stats.two_qubit_count == 1
        assert stats.gate_count == 4

    def test_empty_circuit(self):
        """Test an empty circuit has depth 0."""
        stats = circuit_stats(Circuit(qubit_count=2))
        assert stats.depth == 0
        assert stats.gate_count == 0


class TestQaoaBuilder:
    """Test QAOA circuit construction."""

    def test_params_mismatch(self):
        """Test one gamma per beta."""
        with pytest.raises(Exception):
            QaoaParams(gammas=(0.1, 0.2), betas=(0.1,))

    def test_depth(self):
        """Test p counts layers."""
        assert QaoaParams.layers([0.1, 0.2], [0.3, 0.4]).p == 2

    def test_gate_count_depth_one(self, paper_graph):
        """Test n + p(3|E| + n) gates for depth 1."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.3], [0.2]))
        assert c.qubit_count == 5
        assert len(c) == 5 + (3 * 5 + 5)

    def test_gate_count_depth_two(self, paper_graph):
        """Test n + p(3|E| + n) gates for depth 2."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.3, 0.1], [0.2, 0.4]))
        assert len(c) == 5 + 2 * (3 * 5 + 5)

    def test_layout(self, paper_graph):
        """Test the Hadamard wall, the per-edge cost block and the mixer."""
        gamma, beta = 0.3, 0.2
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([gamma], [beta]))
        assert all(g.kind is GateKind.H for g in c.gates[:5])
        first_edge = c.gates[5:8]
        assert first_edge[0] == Gate.CNOT(1, 0)
        assert first_edge[1].kind is GateKind.RZ
        assert first_edge[1].qubits == (0,)
        assert first_edge[1].theta == pytest.approx(-3.0 * gamma)
        assert first_edge[2] == Gate.CNOT(1, 0)
        mixer = c.gates[-5:]
        assert all(g.kind is GateKind.RX and g.theta == pytest.approx(2 * beta) for g in mixer)
        assert [g.qubits[0] for g in mixer] == [0, 1, 2, 3, 4]

    def test_two_qubit_count(self, paper_graph):
        """Test two CNOTs per edge per layer."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([pi / 4], [pi / 8]))
        assert circuit_stats(c).two_qubit_count == 10
