"""
Tests for the statevector simulator and shot sampling.
"""

from math import pi, sqrt

import numpy as np
import pytest

from qlbench.circuit import Circuit, Gate, QaoaParams, build_qaoa_circuit, make_circuit
from qlbench.core.errors import CapacityError, CircuitError, CountsError
from qlbench.core.models import Counts, NoiseProfile
from qlbench.simulator import (
    Statevector,
    apply_gate,
    derive_seed,
    energy_from_counts,
    expectation_exact,
    sample_counts,
    simulate_exact,
)


class TestStatevector:
    """Test gate application on explicit states."""

    def test_zero_state(self):
        """Test |00> has all weight on index 0."""
        s = Statevector.zero(2)
        assert s.n == 2
        assert s.probabilities()[0] == 1.0

    def test_hadamard_on_qubit_zero(self):
        """Test qubit 0 is the leftmost bit."""
        s = apply_gate(Statevector.zero(2), Gate.H(0))
        assert s.amplitude("00") == pytest.approx(1 / sqrt(2))
        assert s.amplitude("10") == pytest.approx(1 / sqrt(2))
        assert s.amplitude("01") == pytest.approx(0)

    def test_cnot(self):
        """Test CNOT flips the target when the control is set."""
        s = apply_gate(Statevector.zero(2), Gate.RX(0, pi))
        s = apply_gate(s, Gate.CNOT(0, 1))
        assert s.probabilities()[int("11", 2)] == pytest.approx(1.0)

    def test_swap(self):
        """Test SWAP exchanges qubit values."""
        s = apply_gate(Statevector.zero(3), Gate.RX(0, pi))
        s = apply_gate(s, Gate.SWAP(0, 2))
        assert s.probabilities()[int("001", 2)] == pytest.approx(1.0)

    def test_rz_keeps_probabilities(self):
        """Test RZ only changes phases."""
        s = apply_gate(Statevector.zero(1), Gate.H(0))
        s = apply_gate(s, Gate.RZ(0, 0.7))
        assert s.probabilities() == pytest.approx([0.5, 0.5])

    def test_norm_checked(self):
        """Test unnormalized vectors are rejected."""
        with pytest.raises(CircuitError):
            Statevector(np.array([1.0, 1.0], dtype=complex))

    def test_operand_outside_state(self):
        """Test gates beyond the state size are rejected."""
        with pytest.raises(CircuitError):
            apply_gate(Statevector.zero(1), Gate.H(1))


class TestExactSimulation:
    """Test exact distributions and expectation values."""

    def test_distribution_sums_to_one(self, paper_graph):
        """Test probabilities are normalized."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.4], [0.3]))
        assert simulate_exact(c).sum() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("beta", [0.0, 0.3, pi / 4, pi / 2])
    def test_gamma_zero_is_uniform(self, paper_graph, beta):
        """Test gamma = 0 leaves the uniform superposition's distribution."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.0], [beta]))
        assert simulate_exact(c) == pytest.approx(np.full(32, 1 / 32), abs=1e-12)
        assert expectation_exact(paper_graph, c) == pytest.approx(-4.5, abs=1e-9)

    @pytest.mark.parametrize("gamma", [0.0, 0.5, pi / 2, pi])
    def test_beta_zero_is_mean_energy(self, paper_graph, gamma):
        """Test beta = 0 gives the mean energy."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([gamma], [0.0]))
        assert expectation_exact(paper_graph, c) == pytest.approx(-4.5, abs=1e-9)

    def test_energy_bounds(self, paper_graph):
        """Test the expectation lies between -max cut and 0."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.6], [0.4]))
        value = expectation_exact(paper_graph, c)
        assert -8.0 <= value <= 0.0

    def test_capacity(self, paper_graph):
        """Test circuits beyond the simulator capacity are refused."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.1], [0.1]))
        with pytest.raises(CapacityError):
            simulate_exact(c, max_qubits=4)

    def test_size_mismatch(self, paper_graph):
        """Test circuit and graph sizes must agree."""
        with pytest.raises(CircuitError):
            expectation_exact(paper_graph, make_circuit(2, [Gate.H(0)]))


class TestSampling:
    """Test shot sampling."""

    def test_deterministic(self, paper_graph):
        """Test identical seeds give identical counts."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.4], [0.3]))
        noise = NoiseProfile(p1=0.01, p2=0.05, p_readout=0.02)
        first = sample_counts(c, 500, noise, seed=123)
        second = sample_counts(c, 500, noise, seed=123)
        assert first == second

    def test_shots_and_width(self, paper_graph):
        """Test counts sum to the shots and use one bit per qubit."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.4], [0.3]))
        counts = sample_counts(c, 1000, NoiseProfile(), seed=5)
        assert counts.shots == 1000
        assert counts.width == 5

    def test_nonpositive_shots(self, paper_graph):
        """Test shots must be positive."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.4], [0.3]))
        with pytest.raises(CountsError):
            sample_counts(c, 0, NoiseProfile(), seed=1)

    def test_certain_readout_flip(self):
        """Test p_readout = 1 flips every bit."""
        c = Circuit(qubit_count=2)
        counts = sample_counts(c, 50, NoiseProfile(p_readout=1.0), seed=9)
        assert counts.histogram == {"11": 50}

    def test_noiseless_basis_state(self):
        """Test a deterministic circuit always yields its basis state."""
        c = make_circuit(3, [Gate.RX(1, pi)])
        counts = sample_counts(c, 20, NoiseProfile(), seed=0)
        assert counts.histogram == {"010": 20}

    def test_gate_noise_changes_outcomes(self):
        """Test certain gate errors spread a basis state."""
        c = make_circuit(2, [Gate.RX(0, pi), Gate.RX(1, pi)])
        counts = sample_counts(c, 400, NoiseProfile(p1=1.0), seed=3)
        assert set(counts.histogram) != {"11"}

    def test_uniform_superposition(self):
        """Test H on every qubit samples all 32 outcomes within a 99.9% band."""
        c = make_circuit(5, [Gate.H(q) for q in range(5)])
        counts = sample_counts(c, 1000, NoiseProfile(), seed=11)
        assert counts.shots == 1000
        assert len(counts.histogram) == 32
        # joint 99.9% band: two-sided per-outcome tail of 0.001 / 32
        expected = 1000 / 32
        sd = sqrt(1000 * (1 / 32) * (31 / 32))
        assert all(abs(n - expected) <= 4.2 * sd for n in counts.histogram.values())

    def test_fully_depolarized_energy(self, paper_graph):
        """Test p1 = p2 = 1 drives the energy to the mixed-state mean."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.5], [0.35]))
        counts = sample_counts(c, 1000, NoiseProfile(p1=1.0, p2=1.0), seed=13)
        # energy variance under uniform outcomes is sum(w^2) / 4
        se = sqrt(sum(e.w**2 for e in paper_graph.edges) / 4 / 1000)
        assert energy_from_counts(paper_graph, counts) == pytest.approx(-4.5, abs=3 * se)

    @pytest.mark.slow
    def test_converges_to_exact(self, paper_graph):
        """Test 10^5 noiseless shots land within 0.05 of the exact value."""
        c = build_qaoa_circuit(paper_graph, QaoaParams.layers([0.5], [0.35]))
        counts = sample_counts(c, 100_000, NoiseProfile(), seed=2024)
        exact = expectation_exact(paper_graph, c)
        assert energy_from_counts(paper_graph, counts) == pytest.approx(exact, abs=0.05)


class TestEnergyFromCounts:
    """Test empirical energies."""

    def test_single_outcome(self, paper_graph):
        """Test an optimal partition has energy -8."""
        assert energy_from_counts(paper_graph, {"10001": 3}) == -8.0

    def test_mixture(self, paper_graph):
        """Test frequencies weight the energies."""
        counts = Counts(shots=4, histogram={"10001": 2, "00000": 2})
        assert energy_from_counts(paper_graph, counts) == -4.0

    def test_empty(self, paper_graph):
        """Test empty counts are rejected."""
        with pytest.raises(CountsError):
            energy_from_counts(paper_graph, {})

    def test_width_mismatch(self, paper_graph):
        """Test outcome width must match the graph."""
        with pytest.raises(CountsError):
            energy_from_counts(paper_graph, {"101": 1})


class TestDeriveSeed:
    """Test seed derivation."""

    def test_deterministic(self):
        """Test the same keys give the same seed."""
        assert derive_seed(7, 2, 1, 3, 4) == derive_seed(7, 2, 1, 3, 4)

    def test_keys_matter(self):
        """Test different keys give different seeds."""
        seeds = {derive_seed(7, 2, 1, gi, bi) for gi in range(5) for bi in range(5)}
        assert len(seeds) == 25

    def test_range(self):
        """Test seeds are 64-bit unsigned integers."""
        assert 0 <= derive_seed(2**64 - 1, 1) < 2**64
