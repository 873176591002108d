"""
Gate-level circuit representation.

Circuits are immutable ordered gate lists; every qubit is measured at the
end. Rotation conventions:

    RZ(theta) = diag(exp(-i theta/2), exp(+i theta/2))
    RX(theta) = cos(theta/2) I - i sin(theta/2) X
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from enum import Enum
from typing import Any, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from qlbench.core.errors import CircuitError


class GateKind(str, Enum):
    """Supported gate types."""

    H = "H"
    RX = "RX"
    RZ = "RZ"
    CNOT = "CNOT"
    SWAP = "SWAP"

    @property
    def arity(self) -> int:
        """Number of qubit operands."""
        return 2 if self in (GateKind.CNOT, GateKind.SWAP) else 1

    @property
    def is_rotation(self) -> bool:
        """Whether the gate takes an angle."""
        return self in (GateKind.RX, GateKind.RZ)


class Gate(BaseModel):
    """
    A single gate application.

    For CNOT the operands are (control, target).
    """

    model_config = ConfigDict(frozen=True)

    kind: GateKind
    qubits: tuple[int, ...]
    theta: Optional[float] = None

    @model_validator(mode="after")
    def check_operands(self) -> Gate:
        """Operand count matches the gate kind; angles only on rotations."""
        if len(self.qubits) != self.kind.arity:
            raise ValueError(f"{self.kind.value} takes {self.kind.arity} qubit(s)")
        if any(q < 0 for q in self.qubits):
            raise ValueError("qubit indices must be nonnegative")
        if self.kind.arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind.value} operands must be distinct")
        if self.kind.is_rotation and self.theta is None:
            raise ValueError(f"{self.kind.value} requires an angle")
        if not self.kind.is_rotation and self.theta is not None:
            raise ValueError(f"{self.kind.value} takes no angle")
        return self

    @classmethod
    def H(cls, q: int) -> Gate:
        return cls(kind=GateKind.H, qubits=(q,))

    @classmethod
    def RX(cls, q: int, theta: float) -> Gate:
        return cls(kind=GateKind.RX, qubits=(q,), theta=float(theta))

    @classmethod
    def RZ(cls, q: int, theta: float) -> Gate:
        return cls(kind=GateKind.RZ, qubits=(q,), theta=float(theta))

    @classmethod
    def CNOT(cls, control: int, target: int) -> Gate:
        return cls(kind=GateKind.CNOT, qubits=(control, target))

    @classmethod
    def SWAP(cls, a: int, b: int) -> Gate:
        return cls(kind=GateKind.SWAP, qubits=(a, b))

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.arity == 2

    def to_dict(self) -> dict[str, Any]:
        """Gate record {"g": kind, "q": [...], "theta": angle?}."""
        record: dict[str, Any] = {"g": self.kind.value, "q": list(self.qubits)}
        if self.theta is not None:
            record["theta"] = self.theta
        return record

    @classmethod
    def from_dict(cls, record: Mapping[str, Any]) -> Gate:
        """Parse a gate record."""
        return cls(
            kind=GateKind(record["g"]),
            qubits=tuple(int(q) for q in record["q"]),
            theta=record.get("theta"),
        )

    def __str__(self) -> str:
        operands = ",".join(str(q) for q in self.qubits)
        if self.theta is None:
            return f"{self.kind.value}({operands})"
        return f"{self.kind.value}({operands}, {self.theta:.6g})"


class Circuit(BaseModel):
    """
    An ordered gate list on a fixed register, measured in full at the end.

    Attributes:
        qubit_count: Register size
        gates: Gates in execution order
    """

    model_config = ConfigDict(frozen=True)

    qubit_count: int = Field(ge=1, description="Number of qubits")
    gates: tuple[Gate, ...] = Field(default=(), description="Gates in order")

    @model_validator(mode="after")
    def check_gates(self) -> Circuit:
        """Every operand addresses a qubit of the register."""
        for index, gate in enumerate(self.gates):
            if any(q >= self.qubit_count for q in gate.qubits):
                raise ValueError(
                    f"gate {index} ({gate}) addresses a qubit >= {self.qubit_count}"
                )
        return self

    def __len__(self) -> int:
        return len(self.gates)

    def to_dict(self) -> dict[str, Any]:
        """Serialize as {"qubits": n, "gates": [gate records]}."""
        return {"qubits": self.qubit_count, "gates": [g.to_dict() for g in self.gates]}

    @classmethod
    def from_dict(cls, data: Union[Mapping[str, Any], Sequence[Mapping[str, Any]]]) -> Circuit:
        """
        Parse a circuit.

        Accepts the {"qubits", "gates"} object or a bare list of gate records,
        in which case the register is sized by the largest operand.

        Raises:
            CircuitError: If a record is malformed
        """
        try:
            if isinstance(data, Mapping):
                gates = [Gate.from_dict(r) for r in data["gates"]]
                return cls(qubit_count=int(data["qubits"]), gates=tuple(gates))
            gates = [Gate.from_dict(r) for r in data]
            width = max((q for g in gates for q in g.qubits), default=0) + 1
            return cls(qubit_count=width, gates=tuple(gates))
        except (ValidationError, KeyError, TypeError, ValueError) as e:
            raise CircuitError(f"malformed circuit: {e}") from e


class CircuitStats(BaseModel):
    """Size and depth figures of a circuit."""

    model_config = ConfigDict(frozen=True)

    depth: int = Field(ge=0)
    two_qubit_count: int = Field(ge=0)
    gate_count: int = Field(ge=0)


def circuit_stats(c: Circuit) -> CircuitStats:
    """
    Compute depth and gate counts.

    Depth uses as-soon-as-possible layering: each gate lands one layer after
    the latest layer touching any of its qubits.
    """
    level = [0] * c.qubit_count
    two_qubit = 0
    for gate in c.gates:
        layer = max(level[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            level[q] = layer
        if gate.is_two_qubit:
            two_qubit += 1
    return CircuitStats(
        depth=max(level, default=0),
        two_qubit_count=two_qubit,
        gate_count=len(c.gates),
    )


def make_circuit(qubit_count: int, gates: Iterable[Gate]) -> Circuit:
    """Build a circuit, converting validation failures into CircuitError."""
    try:
        return Circuit(qubit_count=qubit_count, gates=tuple(gates))
    except ValidationError as e:
        raise CircuitError(str(e)) from e
