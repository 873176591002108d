"""
QAOA circuit construction for weighted MaxCut.

Layout per layer k: for every edge (u, v, w) in stored order, with
c = max(u, v) and t = min(u, v), emit CNOT(c, t), RZ(t, -w * gamma_k),
CNOT(c, t); then RX(q, 2 * beta_k) on every qubit. A Hadamard wall
precedes the first layer.
"""

from __future__ import annotations

from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qlbench.circuit.ir import Circuit, Gate, make_circuit
from qlbench.core.models import WeightedGraph


class QaoaParams(BaseModel):
    """
    Variational angles of a depth-p QAOA circuit.

    Attributes:
        gammas: Cost-layer angles gamma_1..gamma_p (radians)
        betas: Mixer angles beta_1..beta_p (radians)
    """

    model_config = ConfigDict(frozen=True)

    gammas: tuple[float, ...] = Field(min_length=1)
    betas: tuple[float, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def check_depth(self) -> QaoaParams:
        """One gamma and one beta per layer."""
        if len(self.gammas) != len(self.betas):
            raise ValueError(
                f"{len(self.gammas)} gammas but {len(self.betas)} betas"
            )
        return self

    @property
    def p(self) -> int:
        """Number of cost/mixer layer pairs."""
        return len(self.gammas)

    @classmethod
    def layers(cls, gammas: Sequence[float], betas: Sequence[float]) -> QaoaParams:
        return cls(gammas=tuple(float(g) for g in gammas), betas=tuple(float(b) for b in betas))


def build_qaoa_circuit(g: WeightedGraph, params: QaoaParams) -> Circuit:
    """
    Build the QAOA circuit for a MaxCut instance.

    Args:
        g: MaxCut instance (one qubit per node)
        params: Layer angles

    Returns:
        Circuit with n + p * (3|E| + n) gates
    """
    n = g.node_count
    gates: list[Gate] = [Gate.H(q) for q in range(n)]

    for gamma, beta in zip(params.gammas, params.betas):
        for edge in g.edges:
            control, target = max(edge.u, edge.v), min(edge.u, edge.v)
            gates.append(Gate.CNOT(control, target))
            gates.append(Gate.RZ(target, -edge.w * gamma))
            gates.append(Gate.CNOT(control, target))
        gates.extend(Gate.RX(q, 2.0 * beta) for q in range(n))

    return make_circuit(n, gates)
