"""
Core data models for qlbench.

This module defines the records shared by every stage of the pipeline:
MaxCut instances, partition assignments, measurement histograms and
noise profiles. All of them are immutable pydantic models.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Statevectors of 2^20 amplitudes and 2^20-way enumeration stay workstation-sized.
MAX_NODES = 20


class Edge(BaseModel):
    """A weighted undirected edge {u, v}."""

    model_config = ConfigDict(frozen=True)

    u: int = Field(ge=0, description="First endpoint")
    v: int = Field(ge=0, description="Second endpoint")
    w: float = Field(ge=0.0, description="Nonnegative edge weight")

    @property
    def key(self) -> tuple[int, int]:
        """Undirected identity of the edge."""
        return (min(self.u, self.v), max(self.u, self.v))


class WeightedGraph(BaseModel):
    """
    A weighted MaxCut instance.

    Edges keep the order they were given in; circuit construction iterates
    them in that order.

    Attributes:
        node_count: Number of nodes (one qubit each)
        edges: Weighted edges in stored order
    """

    model_config = ConfigDict(frozen=True)

    node_count: int = Field(ge=1, le=MAX_NODES, description="Number of nodes")
    edges: tuple[Edge, ...] = Field(default=(), description="Weighted edges")

    @model_validator(mode="after")
    def check_edges(self) -> WeightedGraph:
        """Reject self-loops, out-of-range endpoints and duplicate edges."""
        seen: set[tuple[int, int]] = set()
        for edge in self.edges:
            if edge.u == edge.v:
                raise ValueError(f"self-loop on node {edge.u}")
            if edge.u >= self.node_count or edge.v >= self.node_count:
                raise ValueError(
                    f"edge ({edge.u}, {edge.v}) references a node >= {self.node_count}"
                )
            if edge.key in seen:
                raise ValueError(f"duplicate edge {{{edge.key[0]}, {edge.key[1]}}}")
            seen.add(edge.key)
        return self

    @classmethod
    def from_edges(
        cls, node_count: int, edges: Iterable[Sequence[float]]
    ) -> WeightedGraph:
        """Build a graph from (u, v, w) triples."""
        return cls(
            node_count=node_count,
            edges=tuple(Edge(u=int(u), v=int(v), w=float(w)) for u, v, w in edges),
        )

    @property
    def total_weight(self) -> float:
        """Sum of all edge weights."""
        return float(sum(edge.w for edge in self.edges))

    def fingerprint(self) -> str:
        """Stable SHA-256 digest of the node count and ordered edge list."""
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()

    def to_dict(self) -> dict[str, Any]:
        """Convert to the graph file format {"nodes": n, "edges": [[u, v, w], ...]}."""
        return {
            "nodes": self.node_count,
            "edges": [[edge.u, edge.v, edge.w] for edge in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> WeightedGraph:
        """Parse the graph file format."""
        return cls.from_edges(int(data["nodes"]), data.get("edges", []))


class Assignment(BaseModel):
    """
    A partition indicator, one bit per node.

    Rendered with node 0 leftmost; this is the canonical order used for
    every bit string inside qlbench.
    """

    model_config = ConfigDict(frozen=True)

    bits: tuple[int, ...]

    @field_validator("bits")
    @classmethod
    def validate_bits(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Only 0 and 1 are valid bits."""
        if any(b not in (0, 1) for b in v):
            raise ValueError("bits must be 0 or 1")
        return v

    @classmethod
    def from_string(cls, text: str) -> Assignment:
        """Parse a canonical bit string such as '01001'."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(bits=tuple(int(ch) for ch in text))

    @classmethod
    def from_index(cls, index: int, length: int) -> Assignment:
        """Assignment whose canonical string is the binary rendering of index."""
        return cls.from_string(format(index, f"0{length}b"))

    def complement(self) -> Assignment:
        """Swap the two sides of the partition."""
        return Assignment(bits=tuple(1 - b for b in self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


class Counts(BaseModel):
    """
    Measurement histogram in canonical bit order.

    Attributes:
        shots: Number of measurements
        histogram: Canonical bit string -> frequency
    """

    model_config = ConfigDict(frozen=True)

    shots: int = Field(gt=0, description="Number of measurements")
    histogram: dict[str, int] = Field(description="Bit string frequencies")

    @model_validator(mode="after")
    def check_histogram(self) -> Counts:
        """Frequencies are nonnegative, keys share one width, and they sum to shots."""
        widths = {len(key) for key in self.histogram}
        if len(widths) > 1:
            raise ValueError(f"bit strings of mixed width: {sorted(widths)}")
        for key, value in self.histogram.items():
            if not key or any(ch not in "01" for ch in key):
                raise ValueError(f"not a bit string: {key!r}")
            if value < 0:
                raise ValueError(f"negative count for {key}")
        total = sum(self.histogram.values())
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")
        return self

    @classmethod
    def from_samples(cls, samples: Iterable[str]) -> Counts:
        """Aggregate a per-shot list of bit strings."""
        tally = Counter(samples)
        return cls(shots=sum(tally.values()), histogram=dict(sorted(tally.items())))

    @property
    def width(self) -> int:
        """Number of bits per outcome (0 for an empty histogram)."""
        return len(next(iter(self.histogram))) if self.histogram else 0

    def probabilities(self) -> dict[str, float]:
        """Relative frequencies."""
        return {key: value / self.shots for key, value in self.histogram.items()}

    def to_dict(self) -> dict[str, Any]:
        """Convert to {"shots": n, "counts": {...}} with sorted keys."""
        return {"shots": self.shots, "counts": dict(sorted(self.histogram.items()))}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Counts:
        """Parse the counts serialization."""
        return cls(shots=int(data["shots"]), histogram=dict(data["counts"]))


class NoiseProfile(BaseModel):
    """
    Depolarizing and readout noise parameters of a simulated device.

    Attributes:
        p1: Depolarizing probability after each one-qubit gate
        p2: Depolarizing probability after each two-qubit gate
        p_readout: Independent bit-flip probability per measured bit
        label: Free-text name of the profile
    """

    model_config = ConfigDict(frozen=True)

    p1: float = Field(default=0.0, ge=0.0, le=1.0, description="One-qubit gate error")
    p2: float = Field(default=0.0, ge=0.0, le=1.0, description="Two-qubit gate error")
    p_readout: float = Field(default=0.0, ge=0.0, le=1.0, description="Readout bit-flip")
    label: str = Field(default="noiseless", description="Profile name")

    @property
    def has_gate_noise(self) -> bool:
        """Whether any gate inserts Pauli errors."""
        return self.p1 > 0.0 or self.p2 > 0.0

    @property
    def is_noiseless(self) -> bool:
        """Whether all probabilities are zero."""
        return not self.has_gate_noise and self.p_readout == 0.0
