"""Statevector simulation and noisy shot sampling."""

from qlbench.simulator.sampling import (
    DOMAIN_JOB,
    DOMAIN_LANDSCAPE,
    DOMAIN_SHOTS,
    counts_from_outcomes,
    derive_seed,
    energy_from_counts,
    sample_counts,
    sample_outcomes,
)
from qlbench.simulator.statevector import (
    Statevector,
    apply_gate,
    expectation_exact,
    simulate_exact,
)

__all__ = [
    "Statevector",
    "apply_gate",
    "simulate_exact",
    "expectation_exact",
    "sample_counts",
    "sample_outcomes",
    "energy_from_counts",
    "derive_seed",
    "counts_from_outcomes",
    "DOMAIN_SHOTS",
    "DOMAIN_LANDSCAPE",
    "DOMAIN_JOB",
]
