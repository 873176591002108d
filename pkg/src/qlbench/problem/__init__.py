"""MaxCut instances, cut evaluation and the brute-force oracle."""

from qlbench.problem.graph import load_graph, paper_instance, resolve_graph, save_graph
from qlbench.problem.maxcut import (
    brute_force_max_cut,
    cut_value,
    energy,
    energy_table,
    mean_energy,
)

__all__ = [
    "paper_instance",
    "load_graph",
    "save_graph",
    "resolve_graph",
    "cut_value",
    "energy",
    "energy_table",
    "mean_energy",
    "brute_force_max_cut",
]
