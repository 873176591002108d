"""
Grid and landscape records.
"""

from __future__ import annotations

from collections.abc import Sequence
from datetime import datetime, timezone
from math import pi
from typing import Any, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DEFAULT_GRID_STEPS = 20


class GridSpec(BaseModel):
    """
    Equidistant (gamma, beta) sampling grid.

    Attributes:
        gamma_values: Strictly ascending gamma values in radians
        beta_values: Strictly ascending beta values in radians
    """

    model_config = ConfigDict(frozen=True)

    gamma_values: tuple[float, ...] = Field(min_length=1)
    beta_values: tuple[float, ...] = Field(min_length=1)

    @field_validator("gamma_values", "beta_values")
    @classmethod
    def check_ascending(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("grid values must be strictly ascending")
        return v

    @classmethod
    def default(cls, steps: int = DEFAULT_GRID_STEPS) -> GridSpec:
        """gamma in [0, pi] and beta in [0, pi/2], both spaced pi/steps."""
        if steps < 2 or steps % 2:
            raise ValueError(f"grid steps must be a positive even number, got {steps}")
        return cls(
            gamma_values=tuple(k * pi / steps for k in range(steps + 1)),
            beta_values=tuple(k * pi / steps for k in range(steps // 2 + 1)),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.gamma_values), len(self.beta_values))

    @property
    def size(self) -> int:
        return len(self.gamma_values) * len(self.beta_values)

    def to_dict(self) -> dict[str, Any]:
        return {"gamma": list(self.gamma_values), "beta": list(self.beta_values)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GridSpec:
        return cls(gamma_values=tuple(data["gamma"]), beta_values=tuple(data["beta"]))


class LandscapeMeta(BaseModel):
    """
    Provenance of a landscape.

    Attributes:
        backend: Backend the landscape was sampled on
        shots: Shots per point, or "exact" for expectation values
        depth: QAOA depth (1 or 2)
        fixed_layer1: (gamma1, beta1) of the fixed first layer, depth 2 only
        seed: Master seed
        replication: Replication label
        graph_fingerprint: Fingerprint of the MaxCut instance
        noise_label: Noise profile of the backend at sampling time
        created_at: Creation time
        queue_wait: Total simulated queue wait in seconds, if reported
    """

    model_config = ConfigDict(frozen=True)

    backend: str
    shots: Union[int, Literal["exact"]]
    depth: Literal[1, 2]
    fixed_layer1: Optional[tuple[float, float]] = None
    seed: int = 0
    replication: str = "r1"
    graph_fingerprint: str = ""
    noise_label: str = ""
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    queue_wait: Optional[float] = None

    @model_validator(mode="after")
    def check_fixed_layer(self) -> LandscapeMeta:
        """A fixed first layer is present exactly for depth 2."""
        if (self.depth == 2) != (self.fixed_layer1 is not None):
            raise ValueError("fixed_layer1 must be given for depth 2 and only for depth 2")
        if isinstance(self.shots, int) and self.shots <= 0:
            raise ValueError(f"shots must be positive, got {self.shots}")
        return self

    @property
    def exact(self) -> bool:
        return self.shots == "exact"


class Landscape(BaseModel):
    """
    Energy expectation values on a grid.

    energies[i][j] is the value at (gamma_values[i], beta_values[j]).
    """

    model_config = ConfigDict(frozen=True)

    grid: GridSpec
    energies: tuple[tuple[float, ...], ...]
    meta: LandscapeMeta

    @model_validator(mode="after")
    def check_shape(self) -> Landscape:
        """Matrix dimensions match the grid."""
        rows, cols = self.grid.shape
        if len(self.energies) != rows or any(len(row) != cols for row in self.energies):
            raise ValueError(f"energy matrix must be {rows} x {cols}")
        return self

    @classmethod
    def from_matrix(
        cls, grid: GridSpec, matrix: Sequence[Sequence[float]], meta: LandscapeMeta
    ) -> Landscape:
        return cls(
            grid=grid,
            energies=tuple(tuple(float(e) for e in row) for row in matrix),
            meta=meta,
        )

    def matrix(self) -> np.ndarray:
        return np.array(self.energies, dtype=float)

    def to_dict(self) -> dict[str, Any]:
        return {
            "grid": self.grid.to_dict(),
            "energies": [list(row) for row in self.energies],
            "meta": self.meta.model_dump(mode="json"),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Landscape:
        return cls(
            grid=GridSpec.from_dict(data["grid"]),
            energies=tuple(tuple(row) for row in data["energies"]),
            meta=LandscapeMeta.model_validate(data["meta"]),
        )


def find_minimum(landscape: Landscape) -> tuple[float, float, float]:
    """
    Grid point of minimal energy as (gamma, beta, energy).

    Ties go to the smallest gamma index, then the smallest beta index.
    """
    m = landscape.matrix()
    gi, bi = np.unravel_index(int(np.argmin(m)), m.shape)
    gamma, beta = landscape.grid.gamma_values[gi], landscape.grid.beta_values[bi]
    return gamma, beta, float(m[gi, bi])


def boundary_deviation(landscape: Landscape, value: float) -> float:
    """Largest deviation from value over the gamma=0 row and beta=0 column."""
    m = landscape.matrix()
    return float(max(np.max(np.abs(m[0, :] - value)), np.max(np.abs(m[:, 0] - value))))
