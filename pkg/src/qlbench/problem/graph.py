"""
MaxCut instance construction and graph file I/O.

Graph files are JSON objects {"nodes": n, "edges": [[u, v, w], ...]}.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from qlbench.core.errors import GraphError
from qlbench.core.logging import get_logger
from qlbench.core.models import WeightedGraph

logger = get_logger(__name__)

# Edge order follows the cost layer of the reference circuit, left to right.
PAPER_EDGES: tuple[tuple[int, int, float], ...] = (
    (0, 1, 3.0),
    (1, 2, 1.0),
    (1, 4, 1.0),
    (2, 4, 2.0),
    (3, 4, 2.0),
)


def paper_instance() -> WeightedGraph:
    """The 5-node, 5-edge benchmark instance (total weight 9, max cut 8)."""
    return WeightedGraph.from_edges(5, PAPER_EDGES)


def load_graph(path: Path) -> WeightedGraph:
    """
    Load and validate a graph file.

    Args:
        path: Path to a JSON graph file

    Returns:
        Validated graph

    Raises:
        GraphError: If the file is missing, not JSON, or violates an invariant
    """
    if not path.exists():
        raise GraphError(f"graph file not found: {path}")

    try:
        data = json.loads(path.read_text())
        graph = WeightedGraph.from_dict(data)
    except json.JSONDecodeError as e:
        raise GraphError(f"{path}: not valid JSON ({e})") from e
    except ValidationError as e:
        problems = "; ".join(err["msg"] for err in e.errors())
        raise GraphError(f"{path}: {problems}") from e
    except (KeyError, TypeError, ValueError) as e:
        raise GraphError(f"{path}: malformed graph ({e})") from e

    logger.info("graph_loaded", path=str(path), nodes=graph.node_count, edges=len(graph.edges))
    return graph


def save_graph(graph: WeightedGraph, path: Path) -> None:
    """Write a graph file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(graph.to_dict(), indent=2))


def resolve_graph(source: Union[str, Path]) -> WeightedGraph:
    """Return the builtin instance for "paper", otherwise load the named file."""
    if str(source) == "paper":
        return paper_instance()
    return load_graph(Path(source))
