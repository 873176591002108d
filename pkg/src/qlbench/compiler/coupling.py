"""
Coupling maps and device specifications.
"""

from __future__ import annotations

from collections.abc import Iterable
from enum import Enum
from itertools import combinations
from typing import Literal, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from qlbench.circuit.ir import GateKind
from qlbench.core.errors import CompilationError


class CouplingMap(BaseModel):
    """
    Undirected physical qubit connectivity.

    Attributes:
        qubit_count: Number of physical qubits
        pairs: Coupled pairs, stored as (low, high)
    """

    model_config = ConfigDict(frozen=True)

    qubit_count: int = Field(ge=1)
    pairs: frozenset[tuple[int, int]] = Field(default=frozenset())

    @field_validator("pairs", mode="before")
    @classmethod
    def normalize_pairs(cls, v: Iterable[Iterable[int]]) -> frozenset[tuple[int, int]]:
        normalized = set()
        for pair in v:
            a, b = (int(q) for q in pair)
            normalized.add((min(a, b), max(a, b)))
        return frozenset(normalized)

    @model_validator(mode="after")
    def check_pairs(self) -> CouplingMap:
        """Pairs join two distinct valid qubits."""
        for a, b in self.pairs:
            if a == b:
                raise ValueError(f"qubit {a} coupled to itself")
            if b >= self.qubit_count:
                raise ValueError(f"pair ({a}, {b}) references a qubit >= {self.qubit_count}")
        return self

    @classmethod
    def full(cls, n: int) -> CouplingMap:
        """All-to-all connectivity."""
        return cls(qubit_count=n, pairs=frozenset(combinations(range(n), 2)))

    @classmethod
    def linear(cls, n: int) -> CouplingMap:
        """Chain 0 - 1 - ... - (n-1)."""
        return cls(qubit_count=n, pairs=frozenset((i, i + 1) for i in range(n - 1)))

    @property
    def is_full(self) -> bool:
        return len(self.pairs) == self.qubit_count * (self.qubit_count - 1) // 2

    def are_coupled(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.pairs

    def graph(self) -> nx.Graph:
        """Coupling graph with nodes 0..n-1 inserted in order."""
        g = nx.Graph()
        g.add_nodes_from(range(self.qubit_count))
        g.add_edges_from(sorted(self.pairs))
        return g

    def is_connected(self) -> bool:
        return self.qubit_count == 1 or bool(nx.is_connected(self.graph()))


class NativeSet(str, Enum):
    """Native gate sets of the simulated devices."""

    EXTENDED = "extended"
    RESTRICTED = "restricted"

    @property
    def gates(self) -> frozenset[GateKind]:
        if self is NativeSet.EXTENDED:
            return frozenset(GateKind)
        return frozenset({GateKind.RX, GateKind.RZ, GateKind.CNOT})


class DeviceSpec(BaseModel):
    """
    Connectivity and gate set a backend compiles for.

    The coupling is given as a preset sized to the circuit ("full", "linear")
    or as explicit pairs on a fixed register ("custom").

    Attributes:
        coupling: Coupling preset name
        pairs: Explicit pairs for the custom preset
        qubits: Register size for the custom preset
        native_set: Gates the device executes
        label: Free text
    """

    model_config = ConfigDict(frozen=True)

    coupling: Literal["full", "linear", "custom"] = "full"
    pairs: Optional[tuple[tuple[int, int], ...]] = None
    qubits: Optional[int] = Field(default=None, ge=1)
    native_set: NativeSet = NativeSet.EXTENDED
    label: str = ""

    @model_validator(mode="after")
    def check_custom(self) -> DeviceSpec:
        """A custom coupling needs its pairs and register size."""
        if self.coupling == "custom" and (self.pairs is None or self.qubits is None):
            raise ValueError("custom coupling requires 'pairs' and 'qubits'")
        return self

    def coupling_for(self, n: int) -> CouplingMap:
        """
        Coupling map for an n-qubit circuit.

        Raises:
            CompilationError: If a custom map's register differs from n
        """
        if self.coupling == "full":
            return CouplingMap.full(n)
        if self.coupling == "linear":
            return CouplingMap.linear(n)
        if self.qubits != n:
            raise CompilationError(
                f"device '{self.label}' has {self.qubits} qubits, circuit needs {n}"
            )
        return CouplingMap(qubit_count=n, pairs=frozenset(self.pairs or ()))
