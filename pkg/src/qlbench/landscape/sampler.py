"""
Landscape sampling and the depth-1 -> depth-2 warm-start chain.

Every grid point has its own sampling seed derived from the master seed,
the depth and the point's grid indices. Results therefore do not depend on
evaluation order, worker count or whether the backend batches.

Rows are checkpointed to a JSON-lines file as they finish. A run that fails
part-way can be repeated with the same arguments and picks up the finished
rows.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Any, Optional

from qlbench.backends.base import Backend
from qlbench.backends.normalize import normalize
from qlbench.circuit.ir import Circuit
from qlbench.circuit.qaoa import QaoaParams, build_qaoa_circuit
from qlbench.core.errors import CapabilityError, CheckpointError
from qlbench.core.logging import get_logger, run_context
from qlbench.core.models import WeightedGraph
from qlbench.landscape.executor import RowExecutor
from qlbench.landscape.models import GridSpec, Landscape, LandscapeMeta, find_minimum
from qlbench.simulator.sampling import DOMAIN_LANDSCAPE, derive_seed, energy_from_counts

logger = get_logger(__name__)

Layer = tuple[float, float]


def point_params(
    depth: int, gamma: float, beta: float, fixed_layer1: Optional[Layer] = None
) -> QaoaParams:
    """Depth 1: (gamma, beta). Depth 2: ((gamma1, gamma), (beta1, beta))."""
    if depth == 1:
        return QaoaParams.layers([gamma], [beta])
    if fixed_layer1 is None:
        raise ValueError("depth 2 requires a fixed first layer")
    return QaoaParams.layers([fixed_layer1[0], gamma], [fixed_layer1[1], beta])


def point_seed(master: int, depth: int, gamma_index: int, beta_index: int) -> int:
    return derive_seed(master, DOMAIN_LANDSCAPE, depth, gamma_index, beta_index)


class _RowResult:
    __slots__ = ("energies", "queue_wait")

    def __init__(self, energies: list[float], queue_wait: Optional[float]) -> None:
        self.energies = energies
        self.queue_wait = queue_wait


class LandscapeSampler:
    """
    Samples landscapes of one graph on one backend.

    Attributes:
        backend: Backend executing the circuits
        graph: MaxCut instance
        shots: Shots per point; None selects exact expectation values
        seed: Master seed
        workers: Grid rows evaluated in parallel
        replication: Replication label recorded in the metadata
    """

    def __init__(
        self,
        backend: Backend,
        graph: WeightedGraph,
        shots: Optional[int] = 1000,
        seed: int = 0,
        workers: int = 1,
        replication: str = "r1",
    ) -> None:
        if shots is not None and shots <= 0:
            raise ValueError(f"shots must be positive, got {shots}")
        self.backend = backend
        self.graph = graph
        self.shots = shots
        self.seed = seed
        self.workers = workers
        self.replication = replication
        self.logger = logger.bind(backend=backend.name)

    @property
    def exact(self) -> bool:
        return self.shots is None

    def sample(
        self,
        depth: int,
        grid: GridSpec,
        fixed_layer1: Optional[Layer] = None,
        checkpoint: Optional[Path] = None,
    ) -> Landscape:
        """
        Evaluate every grid point.

        Args:
            depth: QAOA depth, 1 or 2
            grid: Sampling grid
            fixed_layer1: (gamma1, beta1), required for depth 2 only
            checkpoint: JSON-lines file for finished rows; removed on success

        Returns:
            Complete landscape

        Raises:
            CapabilityError: If the backend refuses the work, with the point attached
            CheckpointError: If the checkpoint belongs to a different run
        """
        with run_context(
            backend=self.backend.name,
            depth=depth,
            seed=self.seed,
            replication=self.replication,
        ):
            return self._sample(depth, grid, fixed_layer1, checkpoint)

    def _sample(
        self,
        depth: int,
        grid: GridSpec,
        fixed_layer1: Optional[Layer],
        checkpoint: Optional[Path],
    ) -> Landscape:
        if depth not in (1, 2):
            raise ValueError(f"depth must be 1 or 2, got {depth}")
        if (depth == 2) != (fixed_layer1 is not None):
            raise ValueError("fixed_layer1 must be given for depth 2 and only for depth 2")
        if self.exact:
            self.backend.require_exact()

        run_key = self._run_key(depth, grid, fixed_layer1)
        finished = self._resume(checkpoint, run_key) if checkpoint else {}
        lock = threading.Lock()
        if checkpoint is not None and not finished:
            checkpoint.parent.mkdir(parents=True, exist_ok=True)
            checkpoint.write_text(json.dumps({"run": run_key}) + "\n", encoding="utf-8")

        def record(row: int, result: _RowResult) -> None:
            self.logger.debug("row_completed", depth=depth, row=row)
            if checkpoint is None:
                return
            line = {"row": row, "energies": result.energies, "queue_wait": result.queue_wait}
            with lock, open(checkpoint, "a", encoding="utf-8") as f:
                f.write(json.dumps(line) + "\n")

        remaining = [i for i in range(len(grid.gamma_values)) if i not in finished]
        executor = RowExecutor(max_workers=self.workers)
        computed = executor.run(
            remaining,
            lambda row: self._evaluate_row(row, depth, grid, fixed_layer1),
            on_row_done=record,
            points_per_row=len(grid.beta_values),
        )
        rows = {**finished, **computed}

        waits = [rows[i].queue_wait for i in sorted(rows) if rows[i].queue_wait is not None]
        meta = LandscapeMeta(
            backend=self.backend.name,
            shots="exact" if self.shots is None else self.shots,
            depth=depth,  # type: ignore[arg-type]
            fixed_layer1=fixed_layer1,
            seed=self.seed,
            replication=self.replication,
            graph_fingerprint=self.graph.fingerprint(),
            noise_label="noiseless" if self.exact else self.backend.descriptor.noise.label,
            queue_wait=sum(waits) if waits else None,
        )
        landscape = Landscape.from_matrix(
            grid, [rows[i].energies for i in range(len(grid.gamma_values))], meta
        )
        if checkpoint is not None and checkpoint.exists():
            checkpoint.unlink()
        self.logger.info(
            "landscape_sampled",
            depth=depth,
            points=grid.size,
            resumed_rows=len(finished),
            exact=self.exact,
        )
        return landscape

    def _run_key(self, depth: int, grid: GridSpec, fixed_layer1: Optional[Layer]) -> Any:
        key = {
            "backend": self.backend.name,
            "shots": self.shots,
            "depth": depth,
            "fixed_layer1": fixed_layer1,
            "seed": self.seed,
            "grid": grid.to_dict(),
            "graph": self.graph.fingerprint(),
        }
        return json.loads(json.dumps(key))

    def _resume(self, checkpoint: Path, run_key: Any) -> dict[int, _RowResult]:
        if not checkpoint.exists():
            return {}
        lines = [line for line in checkpoint.read_text(encoding="utf-8").splitlines() if line]
        if not lines:
            return {}
        try:
            header = json.loads(lines[0])
            records = [json.loads(line) for line in lines[1:]]
        except json.JSONDecodeError as e:
            raise CheckpointError(f"{checkpoint}: corrupt checkpoint: {e}") from e
        if header.get("run") != run_key:
            raise CheckpointError(f"{checkpoint} belongs to a different run; remove it to restart")
        finished = {
            int(r["row"]): _RowResult([float(e) for e in r["energies"]], r.get("queue_wait"))
            for r in records
        }
        self.logger.info("checkpoint_resumed", path=str(checkpoint), rows=len(finished))
        return finished

    def _evaluate_row(
        self, row: int, depth: int, grid: GridSpec, fixed_layer1: Optional[Layer]
    ) -> _RowResult:
        gamma = grid.gamma_values[row]
        circuits = [
            build_qaoa_circuit(self.graph, point_params(depth, gamma, beta, fixed_layer1))
            for beta in grid.beta_values
        ]
        if self.exact:
            return _RowResult([self.backend.expectation(self.graph, c) for c in circuits], None)

        seeds = [point_seed(self.seed, depth, row, col) for col in range(len(circuits))]
        if self.backend.descriptor.supports_batching:
            chunks = [(0, circuits)]
        else:
            chunks = [(col, [c]) for col, c in enumerate(circuits)]

        energies: list[float] = []
        waits: list[float] = []
        for start, chunk in chunks:
            try:
                energies_chunk, wait = self._run_chunk(chunk, seeds[start : start + len(chunk)])
            except CapabilityError as e:
                e.point = (gamma, grid.beta_values[start])
                raise
            energies.extend(energies_chunk)
            if wait is not None:
                waits.append(wait)
        return _RowResult(energies, sum(waits) if waits else None)

    def _run_chunk(
        self, circuits: list[Circuit], seeds: list[int]
    ) -> tuple[list[float], Optional[float]]:
        shots = self.shots or 0
        job = self.backend.submit(circuits, shots, self.seed, circuit_seeds=seeds)
        raw_results = self.backend.fetch(job.job_id)
        results = [normalize(raw, self.backend.descriptor) for raw in raw_results]
        energies = [energy_from_counts(self.graph, r.counts) for r in results]
        return energies, results[0].metadata.queue_wait


def sample_landscape(
    backend: Backend,
    g: WeightedGraph,
    p: int,
    fixed_layer1: Optional[Layer],
    grid: GridSpec,
    shots: Optional[int],
    seed: int,
    *,
    workers: int = 1,
    replication: str = "r1",
    checkpoint: Optional[Path] = None,
) -> Landscape:
    """
    Sample the energy landscape of g at depth p.

    shots=None evaluates exact expectation values (exact-capable backends only).
    """
    sampler = LandscapeSampler(backend, g, shots, seed, workers, replication)
    return sampler.sample(p, grid, fixed_layer1, checkpoint)


def warm_start_chain(
    backend: Backend,
    g: WeightedGraph,
    grid: GridSpec,
    shots: Optional[int],
    seed: int,
    *,
    workers: int = 1,
    replication: str = "r1",
    checkpoint_dir: Optional[Path] = None,
) -> tuple[Landscape, Landscape]:
    """
    Sample depth 1, fix layer 1 at its minimum, then sample depth 2.

    Returns:
        (depth-1 landscape, depth-2 landscape)
    """
    sampler = LandscapeSampler(backend, g, shots, seed, workers, replication)
    depth1 = sampler.sample(1, grid, checkpoint=_checkpoint_path(checkpoint_dir, sampler, 1))
    gamma1, beta1, energy1 = find_minimum(depth1)
    logger.info("warm_start_layer_fixed", gamma1=gamma1, beta1=beta1, energy=energy1)
    depth2 = sampler.sample(
        2,
        grid,
        fixed_layer1=(gamma1, beta1),
        checkpoint=_checkpoint_path(checkpoint_dir, sampler, 2),
    )
    return depth1, depth2


def checkpoint_file(directory: Path, backend: str, replication: str, depth: int) -> Path:
    """Checkpoint location for one landscape run inside an output directory."""
    return directory / f".{backend}-{replication}-p{depth}.checkpoint.jsonl"


def _checkpoint_path(
    directory: Optional[Path], sampler: LandscapeSampler, depth: int
) -> Optional[Path]:
    if directory is None:
        return None
    return checkpoint_file(directory, sampler.backend.name, sampler.replication, depth)
