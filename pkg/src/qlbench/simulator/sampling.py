"""
Shot-based sampling with depolarizing and readout noise.

Gate noise uses stochastic Pauli trajectories: after every gate, each operand
qubit independently receives a uniformly chosen X, Y or Z with the gate-class
probability. Shots that draw the same error pattern share one simulated
trajectory, which keeps the noiseless and low-noise cases cheap.

Seeding: a shot-sampling seed is split with numpy's SeedSequence into three
independent streams (outcomes, gate errors, readout flips), so the outcome
stream of a run does not depend on the noise settings.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Union

import numpy as np

from qlbench.circuit.ir import Circuit
from qlbench.core.errors import CountsError
from qlbench.core.logging import get_logger
from qlbench.core.models import MAX_NODES, Counts, NoiseProfile, WeightedGraph
from qlbench.problem.maxcut import energy_table
from qlbench.simulator.statevector import check_capacity, prepare, run_ops

logger = get_logger(__name__)

SEED_MASK = (1 << 64) - 1

# Seed domains keep different uses of one master seed apart.
DOMAIN_SHOTS = 1
DOMAIN_LANDSCAPE = 2
DOMAIN_JOB = 3


def derive_seed(master: int, *keys: int) -> int:
    """
    Mix a master seed with integer keys into a 64-bit seed.

    The mix is numpy's SeedSequence entropy hashing of [master, *keys], so it
    depends only on the values and never on call order.
    """
    sequence = np.random.SeedSequence([master & SEED_MASK, *(k & SEED_MASK for k in keys)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def counts_from_outcomes(outcomes: np.ndarray, n: int) -> Counts:
    """Histogram of outcome indices in canonical bit order."""
    values, frequencies = np.unique(outcomes, return_counts=True)
    histogram = {format(int(v), f"0{n}b"): int(f) for v, f in zip(values, frequencies)}
    return Counts(shots=int(outcomes.shape[0]), histogram=histogram)


def _normalized(psi: np.ndarray) -> np.ndarray:
    probs = np.abs(psi) ** 2
    return probs / probs.sum()


def sample_outcomes(
    c: Circuit,
    shots: int,
    noise: NoiseProfile,
    seed: int,
    max_qubits: int = MAX_NODES,
) -> np.ndarray:
    """
    Draw per-shot measurement outcomes as basis-state indices.

    Raises:
        CountsError: If shots is not positive
        CapacityError: If the circuit exceeds max_qubits
    """
    if shots <= 0:
        raise CountsError(f"shots must be positive, got {shots}")
    check_capacity(c, max_qubits)

    n = c.qubit_count
    outcome_ss, gate_ss, readout_ss = np.random.SeedSequence(seed & SEED_MASK).spawn(3)
    outcome_rng = np.random.default_rng(outcome_ss)
    ops = prepare(c)

    if not noise.has_gate_noise:
        probs = _normalized(run_ops(ops, n))
        outcomes = outcome_rng.choice(2**n, size=shots, p=probs)
    else:
        outcomes = _sample_trajectories(c, ops, shots, noise, gate_ss, outcome_rng)

    if noise.p_readout > 0.0:
        readout_rng = np.random.default_rng(readout_ss)
        flips = readout_rng.random((shots, n)) < noise.p_readout
        weights = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
        outcomes = outcomes ^ (flips.astype(np.int64) @ weights)

    return np.asarray(outcomes, dtype=np.int64)


def _sample_trajectories(
    c: Circuit,
    ops: list[Any],
    shots: int,
    noise: NoiseProfile,
    gate_ss: np.random.SeedSequence,
    outcome_rng: np.random.Generator,
) -> np.ndarray:
    n = c.qubit_count
    slots = [
        (index, q, noise.p2 if gate.is_two_qubit else noise.p1)
        for index, gate in enumerate(c.gates)
        for q in gate.qubits
    ]
    outcomes = np.zeros(shots, dtype=np.int64)
    if not slots:
        return outcome_rng.choice(2**n, size=shots, p=_normalized(run_ops(ops, n)))

    gate_rng = np.random.default_rng(gate_ss)
    rates = np.array([p for _, _, p in slots])
    hits = gate_rng.random((shots, len(slots))) < rates
    paulis = gate_rng.integers(1, 4, size=(shots, len(slots)), dtype=np.int8)
    patterns = np.where(hits, paulis, 0).astype(np.int8)

    # Group shots by error pattern, in order of first occurrence.
    groups: dict[bytes, list[int]] = {}
    for shot in range(shots):
        groups.setdefault(patterns[shot].tobytes(), []).append(shot)

    for members in groups.values():
        row = patterns[members[0]]
        insertions: dict[int, list[tuple[int, int]]] = {}
        for slot in np.flatnonzero(row):
            gate_index, q, _ = slots[int(slot)]
            insertions.setdefault(gate_index, []).append((q, int(row[slot])))
        probs = _normalized(run_ops(ops, n, insertions))
        outcomes[members] = outcome_rng.choice(2**n, size=len(members), p=probs)

    logger.debug("trajectories_sampled", shots=shots, trajectories=len(groups))
    return outcomes


def sample_counts(
    c: Circuit,
    shots: int,
    noise: NoiseProfile,
    seed: int,
    max_qubits: int = MAX_NODES,
) -> Counts:
    """
    Sample a measurement histogram.

    Deterministic for a fixed (seed, circuit, noise, shots).

    Args:
        c: Circuit to run
        shots: Number of measurements (> 0)
        noise: Gate and readout noise
        seed: 64-bit seed

    Returns:
        Counts in canonical bit order
    """
    outcomes = sample_outcomes(c, shots, noise, seed, max_qubits)
    return counts_from_outcomes(outcomes, c.qubit_count)


def energy_from_counts(g: WeightedGraph, counts: Union[Counts, Mapping[str, int]]) -> float:
    """
    Empirical energy expectation of a histogram.

    Raises:
        CountsError: If the histogram is empty or its width differs from the graph
    """
    histogram = counts.histogram if isinstance(counts, Counts) else dict(counts)
    total = sum(histogram.values())
    if not histogram or total <= 0:
        raise CountsError("cannot evaluate energy of empty counts")

    table = energy_table(g)
    weighted = 0.0
    for bits, frequency in histogram.items():
        if len(bits) != g.node_count:
            raise CountsError(
                f"outcome '{bits}' has {len(bits)} bits, graph has {g.node_count} nodes"
            )
        weighted += frequency * float(table[int(bits, 2)])
    return weighted / total
