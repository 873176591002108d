"""
Command-line interface for qlbench.

Provides commands for inspecting instances, sampling landscapes, computing
MAD reports, exporting artifacts and inspecting backends and jobs.

Exit codes: 0 success, 2 usage error, 3 capability error, 4 data/format error.
"""

from __future__ import annotations

import json
from collections.abc import Iterator
from contextlib import contextmanager
from math import pi
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from qlbench import __version__
from qlbench.backends.base import Backend
from qlbench.backends.jobs import JobStore
from qlbench.backends.normalize import normalize
from qlbench.backends.registry import BackendRegistry
from qlbench.circuit.ir import circuit_stats
from qlbench.circuit.qaoa import build_qaoa_circuit
from qlbench.core.config import Settings, get_settings, reset_settings
from qlbench.core.errors import GridMismatchError, QlbenchError
from qlbench.core.logging import get_logger, setup_logging
from qlbench.core.models import WeightedGraph
from qlbench.landscape.io import export_landscape_csv, load_landscape, save_landscape
from qlbench.landscape.models import GridSpec, Landscape, boundary_deviation, find_minimum
from qlbench.landscape.sampler import (
    LandscapeSampler,
    checkpoint_file,
    point_params,
    warm_start_chain,
)
from qlbench.metrics.ladder import DEFAULT_LEVELS, noise_ladder
from qlbench.metrics.mad import mad
from qlbench.metrics.report import report
from qlbench.problem.graph import resolve_graph
from qlbench.problem.maxcut import brute_force_max_cut, mean_energy
from qlbench.reporting import ReportGenerator
from qlbench.reporting.heatmap import write_heatmap

app = typer.Typer(
    name="qlbench",
    help="qlbench: QAOA MaxCut landscape benchmarking on simulated quantum backends",
    add_completion=False,
)
instance_app = typer.Typer(help="Inspect and validate MaxCut instances")
landscape_app = typer.Typer(help="Sample and inspect energy landscapes")
metrics_app = typer.Typer(help="Compare landscapes (MAD_SIM, MAD_MMS)")
export_app = typer.Typer(help="Export landscapes as images or CSV")
backends_app = typer.Typer(help="Inspect available backends")
jobs_app = typer.Typer(help="Inspect submitted jobs")
app.add_typer(instance_app, name="instance")
app.add_typer(landscape_app, name="landscape")
app.add_typer(metrics_app, name="metrics")
app.add_typer(export_app, name="export")
app.add_typer(backends_app, name="backends")
app.add_typer(jobs_app, name="jobs")

console = Console()
err_console = Console(stderr=True)


@contextmanager
def _handle_errors() -> Iterator[None]:
    """Map library errors to their exit codes."""
    try:
        yield
    except QlbenchError as e:
        err_console.print(f"Error: {e}", style="red", markup=False, highlight=False)
        get_logger(__name__).debug("command_failed", error=str(e), exit_code=e.exit_code)
        raise typer.Exit(e.exit_code)


def _registry(settings: Settings, out_dir: Optional[Path] = None) -> BackendRegistry:
    store_path = settings.execution.job_store or (out_dir or settings.output_dir) / "jobs.jsonl"
    store = JobStore(store_path, poll_interval=settings.execution.poll_interval)
    return BackendRegistry(settings, store=store)


def _create_backend(settings: Settings, name: str, out_dir: Optional[Path] = None) -> Backend:
    with _handle_errors():
        registry = _registry(settings, out_dir)
    try:
        return registry.create(name)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--backend")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


@app.callback()
def main(
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Settings file (YAML or JSON)"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose logging"),
) -> None:
    """QAOA MaxCut landscape benchmarking."""
    reset_settings()
    try:
        get_settings(config)
    except QlbenchError as e:
        # logging is not configured yet
        err_console.print(f"Error: {e}", style="red", markup=False, highlight=False)
        raise typer.Exit(e.exit_code)
    setup_logging(level="DEBUG" if verbose else None)


# --------------------------------------------------------------------------- instance


@instance_app.command("show")
def instance_show(
    paper: bool = typer.Option(False, "--paper", help="Use the builtin benchmark instance"),
    graph: Optional[Path] = typer.Option(None, "--graph", "-g", help="Graph file"),
    as_json: bool = typer.Option(False, "--json", help="Print the graph file JSON only"),
) -> None:
    """
    Print a MaxCut instance and its brute-force maximum cut.

    Examples:
        qlbench instance show --paper
        qlbench instance show --graph my_graph.json --json
    """
    if paper and graph is not None:
        raise typer.BadParameter("use either --paper or --graph", param_hint="--graph")

    with _handle_errors():
        g = resolve_graph("paper" if graph is None else graph)
        if as_json:
            typer.echo(json.dumps(g.to_dict(), indent=2))
            return

        best, optima = brute_force_max_cut(g)

    table = Table(title=f"MaxCut instance ({g.node_count} nodes)")
    table.add_column("u", justify="right", style="cyan")
    table.add_column("v", justify="right", style="cyan")
    table.add_column("weight", justify="right")
    for edge in g.edges:
        table.add_row(str(edge.u), str(edge.v), f"{edge.w:g}")
    console.print(table)

    console.print(f"Edges: {len(g.edges)}")
    console.print(f"Total weight: {g.total_weight:g}")
    console.print(f"Max cut: {best:g}")
    console.print("Optimal partitions: " + ", ".join(sorted(str(a) for a in optima)))


@instance_app.command("validate")
def instance_validate(
    file: Path = typer.Argument(..., help="Graph file to validate"),
) -> None:
    """Check a graph file against the instance invariants."""
    with _handle_errors():
        g = resolve_graph(file)
    console.print(
        f"[green]✓[/green] {file}: {g.node_count} nodes, {len(g.edges)} edges, "
        f"total weight {g.total_weight:g}"
    )


# --------------------------------------------------------------------------- landscape


def _check_run_flags(
    depth: int,
    gamma1: Optional[float],
    beta1: Optional[float],
    warm_start: bool,
    shots: Optional[int],
    exact: bool,
) -> None:
    if exact and shots is not None:
        raise typer.BadParameter("--exact and --shots are mutually exclusive", param_hint="--shots")
    if (gamma1 is None) != (beta1 is None):
        raise typer.BadParameter("--gamma1 and --beta1 go together", param_hint="--gamma1")
    if warm_start and gamma1 is not None:
        raise typer.BadParameter(
            "--warm-start chooses the first layer itself", param_hint="--warm-start"
        )
    if depth == 1 and gamma1 is not None:
        raise typer.BadParameter("a fixed first layer needs --depth 2", param_hint="--gamma1")
    if depth == 2 and gamma1 is None and not warm_start:
        raise typer.BadParameter(
            "depth 2 needs a fixed first layer (--gamma1/--beta1) or --warm-start",
            param_hint="--depth",
        )


def _write_landscape(landscape: Landscape, out_dir: Path) -> Path:
    meta = landscape.meta
    stem = f"{meta.backend}-p{meta.depth}-{meta.replication}"
    json_path = out_dir / f"{stem}.json"
    save_landscape(landscape, json_path)
    rows = export_landscape_csv(landscape, out_dir / f"{stem}.csv")
    gamma, beta, energy = find_minimum(landscape)
    console.print(
        f"[bold]depth {meta.depth}[/bold] ({meta.backend}, shots={meta.shots}): "
        f"{rows} points -> {json_path}"
    )
    console.print(f"  minimum: gamma={_fmt(gamma)} beta={_fmt(beta)} energy={_fmt(energy)}")
    return json_path


@landscape_app.command("run")
def landscape_run(
    backend: str = typer.Option("local-exact", "--backend", "-b", help="Backend name"),
    graph: str = typer.Option("paper", "--graph", "-g", help='Graph file or "paper"'),
    depth: int = typer.Option(1, "--depth", "-p", min=1, max=2, help="QAOA depth (1 or 2)"),
    gamma1: Optional[float] = typer.Option(None, "--gamma1", help="Fixed layer-1 gamma"),
    beta1: Optional[float] = typer.Option(None, "--beta1", help="Fixed layer-1 beta"),
    warm_start: bool = typer.Option(
        False, "--warm-start", help="Sample depth 1, fix its minimum, then sample depth 2"
    ),
    shots: Optional[int] = typer.Option(None, "--shots", "-s", min=1, help="Shots per point"),
    exact: bool = typer.Option(False, "--exact", help="Exact expectation values"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="Master seed (QLB_SEED)"),
    grid_steps: Optional[int] = typer.Option(
        None, "--grid-steps", min=2, help="Grid spacing is pi/steps (even)"
    ),
    workers: Optional[int] = typer.Option(
        None, "--workers", "-w", min=1, max=64, help="Rows evaluated in parallel"
    ),
    replication: str = typer.Option("r1", "--replication", "-r", help="Replication label"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory"),
) -> None:
    """
    Sample an energy landscape on the (gamma, beta) grid.

    Writes <backend>-p<depth>-<replication>.json and .csv per landscape.

    Examples:
        qlbench landscape run --backend local-exact --depth 1 --exact
        qlbench landscape run --backend mock-iontrap --warm-start --shots 1000 --seed 7
        qlbench landscape run --backend mock-superconducting --depth 2 --gamma1 0.47 --beta1 0.31
    """
    _check_run_flags(depth, gamma1, beta1, warm_start, shots, exact)
    settings = get_settings()
    steps = grid_steps or settings.sampling.grid_steps
    if steps % 2:
        raise typer.BadParameter("grid steps must be even", param_hint="--grid-steps")

    out_dir = out or settings.output_dir
    run_shots = None if exact else (shots or settings.sampling.shots)
    run_seed = settings.seed if seed is None else seed
    run_workers = workers or settings.sampling.workers
    device = _create_backend(settings, backend, out_dir)

    console.print(Panel.fit(f"Sampling landscape on {backend}", style="bold blue"))
    with _handle_errors():
        g = resolve_graph(graph)
        grid = GridSpec.default(steps)
        if warm_start:
            depth1, depth2 = warm_start_chain(
                device,
                g,
                grid,
                run_shots,
                run_seed,
                workers=run_workers,
                replication=replication,
                checkpoint_dir=out_dir,
            )
            _write_landscape(depth1, out_dir)
            _write_landscape(depth2, out_dir)
            return

        fixed = (gamma1, beta1) if gamma1 is not None and beta1 is not None else None
        sampler = LandscapeSampler(device, g, run_shots, run_seed, run_workers, replication)
        landscape = sampler.sample(
            depth,
            grid,
            fixed_layer1=fixed,
            checkpoint=checkpoint_file(out_dir, backend, replication, depth),
        )
        _write_landscape(landscape, out_dir)


@landscape_app.command("show")
def landscape_show(
    file: Path = typer.Argument(..., help="Landscape JSON file"),
    graph: str = typer.Option("paper", "--graph", "-g", help='Graph file or "paper"'),
) -> None:
    """Print a stored landscape's provenance, minimum and boundary check."""
    with _handle_errors():
        landscape = load_landscape(file)
        g = resolve_graph(graph)

    meta = landscape.meta
    table = Table(title=f"Landscape {file.name}", show_header=False)
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="white")
    table.add_row("Backend", meta.backend)
    table.add_row("Shots", str(meta.shots))
    table.add_row("Depth", str(meta.depth))
    table.add_row("Fixed layer 1", str(meta.fixed_layer1) if meta.fixed_layer1 else "-")
    table.add_row("Seed", str(meta.seed))
    table.add_row("Replication", meta.replication)
    table.add_row("Noise", meta.noise_label)
    table.add_row("Grid", f"{landscape.grid.shape[0]} x {landscape.grid.shape[1]}")
    table.add_row("Created", meta.created_at.isoformat())
    table.add_row("Queue wait", f"{meta.queue_wait:.3f}s" if meta.queue_wait is not None else "-")
    console.print(table)

    gamma, beta, energy = find_minimum(landscape)
    console.print(f"minimum: gamma={_fmt(gamma)} beta={_fmt(beta)} energy={_fmt(energy)}")
    if meta.graph_fingerprint == g.fingerprint():
        deviation = boundary_deviation(landscape, mean_energy(g))
        console.print(f"boundary deviation from {mean_energy(g):g}: {deviation:.3e}")
    else:
        console.print("[yellow]graph differs from the landscape's graph; boundary skipped[/yellow]")


# --------------------------------------------------------------------------- metrics


def _load_all(files: list[Path]) -> list[Landscape]:
    landscapes = [load_landscape(path) for path in files]
    for path, landscape in zip(files[1:], landscapes[1:]):
        if landscape.grid != landscapes[0].grid:
            raise GridMismatchError(f"{path}: grid differs from {files[0]}")
    return landscapes


@metrics_app.command("report")
def metrics_report(
    files: Optional[list[Path]] = typer.Argument(None, help="Landscape JSON files"),
    landscapes: Optional[list[Path]] = typer.Option(
        None, "--landscapes", "-l", help="Landscape JSON file (repeatable)"
    ),
    reference: list[str] = typer.Option(
        ["exact"], "--reference", help='"exact" or exact reference landscape files'
    ),
    graph: str = typer.Option("paper", "--graph", "-g", help='Graph file or "paper"'),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV report path"),
    json_out: Optional[Path] = typer.Option(None, "--json", help="JSON report path"),
) -> None:
    """
    Compute MAD_SIM and MAD_MMS for every landscape.

    Landscapes may be given positionally, with --landscapes, or both;
    "--landscapes a.json b.json" reads both files.

    Example:
        qlbench metrics report out/*.json --reference exact --graph paper --out report.csv
    """
    paths = [*(landscapes or []), *(files or [])]
    if not paths:
        raise typer.BadParameter("no landscape files given", param_hint="--landscapes")

    with _handle_errors():
        g = resolve_graph(graph)
        loaded = _load_all(paths)
        references = None
        if reference != ["exact"]:
            references = [load_landscape(Path(path)) for path in reference]
        mad_report = report(loaded, references, g, sources=[p.name for p in paths])

    generator = ReportGenerator()
    typer.echo(generator.render_text(mad_report), nl=False)
    if out is not None:
        generator.export_csv(mad_report, out)
        console.print(f"✓ Report saved to {out}")
    if json_out is not None:
        generator.export_json(mad_report, json_out)
        console.print(f"✓ JSON report saved to {json_out}")


@metrics_app.command("mad")
def metrics_mad(
    a: Path = typer.Option(..., "--a", help="First landscape file"),
    b: Path = typer.Option(..., "--b", help="Second landscape file"),
) -> None:
    """Print the mean absolute difference between two landscapes."""
    with _handle_errors():
        value = mad(*_load_all([a, b]))
    typer.echo(f"{value:.12g}")


@metrics_app.command("ladder")
def metrics_ladder(
    graph: str = typer.Option("paper", "--graph", "-g", help='Graph file or "paper"'),
    levels: str = typer.Option(
        ",".join(f"{p:g}" for p in DEFAULT_LEVELS), "--levels", help="Comma-separated p2 values"
    ),
    shots: Optional[int] = typer.Option(None, "--shots", "-s", min=1, help="Shots per point"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="Master seed"),
    grid_steps: Optional[int] = typer.Option(None, "--grid-steps", min=2, help="pi/steps"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", min=1, max=64),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output path"),
) -> None:
    """
    Depth-1 MAD values over a ladder of gate-noise levels (p1 = p2/10).
    """
    try:
        p2_levels = [float(p) for p in levels.split(",") if p.strip()]
    except ValueError:
        raise typer.BadParameter(f"not a list of numbers: {levels}", param_hint="--levels")
    if not p2_levels or any(not 0.0 <= p <= 1.0 for p in p2_levels):
        raise typer.BadParameter("levels must lie in [0, 1]", param_hint="--levels")

    settings = get_settings()
    steps = grid_steps or settings.sampling.grid_steps
    if steps % 2:
        raise typer.BadParameter("grid steps must be even", param_hint="--grid-steps")

    with _handle_errors():
        g = resolve_graph(graph)
        result = noise_ladder(
            g,
            p2_levels,
            shots=shots or settings.sampling.shots,
            seed=settings.seed if seed is None else seed,
            grid=GridSpec.default(steps),
            workers=workers or settings.sampling.workers,
        )

    table = Table(title=f"Noise ladder ({result.shots} shots, slack {result.slack:.4f})")
    for column in ("p1", "p2", "mad_sim", "mad_mms"):
        table.add_column(column, justify="right")
    for row in result.rows:
        table.add_row(f"{row.p1:g}", f"{row.p2:g}", _fmt(row.mad_sim), _fmt(row.mad_mms))
    console.print(table)
    status = "[green]monotone[/green]" if result.monotone else "[yellow]not monotone[/yellow]"
    console.print(f"MAD_MMS non-increasing and MAD_SIM non-decreasing within slack: {status}")
    if out is not None:
        ReportGenerator().export_ladder_csv(result, out)
        console.print(f"✓ Ladder saved to {out}")


# --------------------------------------------------------------------------- export


@export_app.command("heatmap")
def export_heatmap(
    landscape: Path = typer.Option(..., "--landscape", "-l", help="Landscape JSON file"),
    out: Path = typer.Option(..., "--out", "-o", help="PGM output path"),
    mark: bool = typer.Option(False, "--mark", help="Frame the image and point at the minimum"),
) -> None:
    """Write a grayscale PGM heatmap (gamma horizontal, beta vertical)."""
    with _handle_errors():
        loaded = load_landscape(landscape)
    write_heatmap(loaded, out, mark_minimum=mark)
    console.print(f"✓ Heatmap saved to {out}")


@export_app.command("csv")
def export_csv(
    landscape: Path = typer.Option(..., "--landscape", "-l", help="Landscape JSON file"),
    out: Path = typer.Option(..., "--out", "-o", help="CSV output path"),
) -> None:
    """Write gamma,beta,energy rows of a stored landscape."""
    with _handle_errors():
        loaded = load_landscape(landscape)
    rows = export_landscape_csv(loaded, out)
    console.print(f"✓ {rows} rows saved to {out}")


# --------------------------------------------------------------------------- backends & jobs


@backends_app.command("list")
def backends_list(
    as_json: bool = typer.Option(False, "--json", help="Print descriptors as JSON"),
) -> None:
    """List bundled and configured backends."""
    with _handle_errors():
        descriptors = _registry(get_settings()).descriptors()

    if as_json:
        typer.echo(json.dumps([d.model_dump(mode="json") for d in descriptors], indent=2))
        return

    table = Table(title="Backends")
    columns = ("name", "batching", "bit_order", "result_style", "exposes_compiled", "coupling")
    for column in (*columns, "p2", "queue_delay"):
        table.add_column(column)
    for descriptor in descriptors:
        summary = descriptor.summary()
        table.add_row(
            *(str(summary[c]) for c in columns),
            f"{summary['p2']:g}",
            f"{summary['queue_delay']:g}s",
        )
    console.print(table)


@jobs_app.command("list")
def jobs_list(
    backend: Optional[str] = typer.Option(None, "--backend", "-b", help="Filter by backend"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Directory holding jobs.jsonl"),
) -> None:
    """List jobs recorded in the job store."""
    with _handle_errors():
        jobs = _registry(get_settings(), out).store.list_jobs(backend)

    if not jobs:
        console.print("No jobs recorded")
        return
    table = Table(title=f"Jobs ({len(jobs)})")
    for column in ("job_id", "backend", "circuits", "shots", "submitted_at"):
        table.add_column(column)
    for job in jobs:
        table.add_row(
            job.job_id,
            job.backend,
            str(job.circuit_count),
            str(job.shots),
            job.submitted_at.isoformat(),
        )
    console.print(table)


@jobs_app.command("show")
def jobs_show(
    job_id: str = typer.Argument(..., help="Job id"),
    raw: bool = typer.Option(False, "--raw", help="Print raw results as JSON"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Directory holding jobs.jsonl"),
) -> None:
    """Fetch a job's results (normalized unless --raw)."""
    with _handle_errors():
        registry = _registry(get_settings(), out)
        job = registry.store.get(job_id)
        results = registry.store.wait(job_id)
        if raw:
            typer.echo(json.dumps([r.model_dump(mode="json") for r in results], indent=2))
            return
        descriptor = registry.get(job.backend)
        normalized = [normalize(r, descriptor) for r in results]

    console.print(
        f"Job {job.job_id} on {job.backend}: {job.circuit_count} circuit(s), {job.shots} shots"
    )
    for index, result in enumerate(normalized):
        top = sorted(result.counts.histogram.items(), key=lambda kv: (-kv[1], kv[0]))[:5]
        outcomes = ", ".join(f"{bits}:{n}" for bits, n in top)
        console.print(f"  [{index}] {outcomes}")


# --------------------------------------------------------------------------- compile


@app.command("compile")
def compile_command(
    backend: str = typer.Option(..., "--backend", "-b", help="Backend name"),
    depth: int = typer.Option(1, "--depth", "-p", min=1, max=2, help="QAOA depth"),
    graph: str = typer.Option("paper", "--graph", "-g", help='Graph file or "paper"'),
    gamma: float = typer.Option(pi / 4, "--gamma", help="Gamma of every layer"),
    beta: float = typer.Option(pi / 8, "--beta", help="Beta of every layer"),
    as_json: bool = typer.Option(False, "--json", help="Print the compiled circuit JSON"),
) -> None:
    """
    Show how a backend compiles the QAOA circuit.

    Backends that do not expose compilation results exit with code 3.
    """
    device = _create_backend(get_settings(), backend)
    with _handle_errors():
        g: WeightedGraph = resolve_graph(graph)
        fixed = (gamma, beta) if depth == 2 else None
        circuit = build_qaoa_circuit(g, point_params(depth, gamma, beta, fixed))
        compiled = device.compiled_view(circuit)

    if as_json:
        typer.echo(json.dumps(compiled.to_dict(), indent=2))
        return

    table = Table(title=f"Compiled for {backend}", show_header=False)
    table.add_column("Property", style="cyan")
    table.add_column("Logical", justify="right")
    table.add_column("Compiled", justify="right")
    logical = circuit_stats(circuit)
    table.add_row("depth", str(logical.depth), str(compiled.stats.depth))
    table.add_row(
        "two_qubit_count", str(logical.two_qubit_count), str(compiled.stats.two_qubit_count)
    )
    table.add_row("gate_count", str(logical.gate_count), str(compiled.stats.gate_count))
    table.add_row("final_layout", "-", " ".join(str(p) for p in compiled.final_layout))
    console.print(table)


# --------------------------------------------------------------------------- info


@app.command()
def info() -> None:
    """Display configuration and backend information."""
    settings = get_settings()

    table = Table(title="qlbench System Information", show_header=False)
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="white")

    table.add_row("Version", __version__)
    table.add_row("Default seed", str(settings.seed))
    table.add_row("Shots", str(settings.sampling.shots))
    table.add_row("Grid", f"pi/{settings.sampling.grid_steps}")
    table.add_row("Workers", str(settings.sampling.workers))
    table.add_row("Max qubits", str(settings.execution.max_qubits))
    table.add_row("Output Directory", str(settings.output_dir))
    table.add_row(
        "Job store", str(settings.execution.job_store or settings.output_dir / "jobs.jsonl")
    )
    console.print(table)

    console.print("\n[bold]Available Backends:[/bold]")
    with _handle_errors():
        for name in _registry(settings).names():
            console.print(f"  • {name}")


@app.command()
def version() -> None:
    """Display version information."""
    console.print(f"qlbench v{__version__}")


if __name__ == "__main__":
    app()
