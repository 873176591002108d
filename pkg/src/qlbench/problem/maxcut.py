"""
Cut and energy evaluation for weighted MaxCut instances.

Energy is the negated cut value, so lower energy means a better cut.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Union

import numpy as np

from qlbench.core.errors import CapacityError, GraphError
from qlbench.core.logging import get_logger
from qlbench.core.models import MAX_NODES, Assignment, WeightedGraph

logger = get_logger(__name__)

AssignmentLike = Union[Assignment, str]


def _as_assignment(g: WeightedGraph, a: AssignmentLike) -> Assignment:
    assignment = Assignment.from_string(a) if isinstance(a, str) else a
    if len(assignment) != g.node_count:
        raise GraphError(
            f"assignment has {len(assignment)} bits, graph has {g.node_count} nodes"
        )
    return assignment


def cut_value(g: WeightedGraph, a: AssignmentLike) -> float:
    """
    Total weight of edges whose endpoints lie in different partitions.

    Args:
        g: MaxCut instance
        a: Assignment or canonical bit string (node 0 leftmost)

    Returns:
        Cut value

    Raises:
        GraphError: If the assignment length does not match the graph
    """
    bits = _as_assignment(g, a).bits
    return float(sum(edge.w for edge in g.edges if bits[edge.u] != bits[edge.v]))


def energy(g: WeightedGraph, a: AssignmentLike) -> float:
    """Energy of an assignment, i.e. the negated cut value."""
    return -cut_value(g, a)


@lru_cache(maxsize=64)
def energy_table(g: WeightedGraph) -> np.ndarray:
    """
    Energies of all 2^n assignments, indexed by basis state.

    Index i corresponds to the canonical bit string format(i, "0{n}b"),
    i.e. node 0 is the most significant bit. The returned array is read-only.
    """
    n = g.node_count
    indices = np.arange(2**n, dtype=np.int64)
    bits = (indices[:, None] >> (n - 1 - np.arange(n))) & 1
    cuts = np.zeros(2**n, dtype=float)
    for edge in g.edges:
        cuts += edge.w * (bits[:, edge.u] != bits[:, edge.v])
    table = -cuts
    table.setflags(write=False)
    return table


def mean_energy(g: WeightedGraph) -> float:
    """Mean energy over all assignments, -(total weight)/2."""
    return -g.total_weight / 2.0


def brute_force_max_cut(
    g: WeightedGraph, max_nodes: int = MAX_NODES
) -> tuple[float, frozenset[Assignment]]:
    """
    Exhaustively evaluate every assignment.

    Args:
        g: MaxCut instance
        max_nodes: Refuse graphs with more nodes than this

    Returns:
        (maximum cut value, all maximizing assignments)

    Raises:
        CapacityError: If the graph is larger than max_nodes
    """
    if g.node_count > max_nodes:
        raise CapacityError(
            f"brute force limited to {max_nodes} nodes, graph has {g.node_count}"
        )

    cuts = -energy_table(g)
    best = float(cuts.max())
    winners = np.flatnonzero(np.isclose(cuts, best, rtol=0.0, atol=1e-9))
    argmax = frozenset(Assignment.from_index(int(i), g.node_count) for i in winners)

    logger.debug("brute_force_complete", nodes=g.node_count, max_cut=best, maximizers=len(argmax))
    return best, argmax
