"""
Reporting module for MAD tables and landscape images.

Supports multiple output formats:
- CSV (backend,depth,replication,mad_sim,mad_mms)
- JSON (machine-readable, with a summary)
- Aligned text for terminals
- PGM heatmaps of landscapes
"""

import csv
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from qlbench import __version__
from qlbench.core.logging import get_logger
from qlbench.metrics.ladder import LadderResult
from qlbench.metrics.report import REPORT_COLUMNS, MadReport
from qlbench.reporting.heatmap import encode_pgm, heatmap_pixels, write_heatmap

logger = get_logger(__name__)

__all__ = ["ReportGenerator", "write_heatmap", "heatmap_pixels", "encode_pgm"]


class ReportGenerator:
    """Generate reports from MAD tables"""

    def __init__(self, precision: int = 6):
        self.timestamp = datetime.now(timezone.utc)
        self.precision = precision

    def _fmt(self, value: float) -> str:
        return f"{value:.{self.precision}f}"

    def generate_summary(self, mad_report: MadReport) -> dict[str, Any]:
        """
        Generate summary statistics

        Args:
            mad_report: MAD table

        Returns:
            Dictionary with per-backend averages and the closest backend to simulation
        """
        per_backend: dict[str, dict[str, float]] = {}
        for backend in dict.fromkeys(row.backend for row in mad_report.rows):
            rows = mad_report.for_backend(backend)
            per_backend[backend] = {
                "mean_mad_sim": sum(r.mad_sim for r in rows) / len(rows),
                "mean_mad_mms": sum(r.mad_mms for r in rows) / len(rows),
                "rows": len(rows),
            }

        closest = min(per_backend, key=lambda b: per_backend[b]["mean_mad_sim"], default=None)
        return {
            "timestamp": self.timestamp.isoformat(),
            "total_rows": len(mad_report),
            "backends": per_backend,
            "closest_to_simulation": closest,
        }

    def export_csv(self, mad_report: MadReport, output_path: Path) -> None:
        """
        Export the MAD table to CSV

        Args:
            mad_report: MAD table
            output_path: Path to output file
        """
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(REPORT_COLUMNS)
            for row in mad_report.rows:
                writer.writerow(
                    [
                        row.backend,
                        row.depth,
                        row.replication,
                        self._fmt(row.mad_sim),
                        self._fmt(row.mad_mms),
                    ]
                )

        logger.info("csv_report_exported", path=str(output_path), rows=len(mad_report))

    def export_json(self, mad_report: MadReport, output_path: Path) -> None:
        """
        Export the MAD table to JSON

        Args:
            mad_report: MAD table
            output_path: Path to output file
        """
        data = {
            "metadata": {
                "generated_at": self.timestamp.isoformat(),
                "qlbench_version": __version__,
            },
            "summary": self.generate_summary(mad_report),
            "rows": [dict(row.to_dict(), source=row.source) for row in mad_report.rows],
        }
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w") as f:
            json.dump(data, f, indent=2)

        logger.info("json_report_exported", path=str(output_path), rows=len(mad_report))

    def render_text(self, mad_report: MadReport) -> str:
        """
        Render the MAD table as aligned columns

        Text columns are left-aligned, numeric columns right-aligned; columns are
        separated by two spaces.
        """
        body = [
            [
                row.backend,
                str(row.depth),
                row.replication,
                self._fmt(row.mad_sim),
                self._fmt(row.mad_mms),
            ]
            for row in mad_report.rows
        ]
        table = [list(REPORT_COLUMNS), *body]
        widths = [max(len(line[i]) for line in table) for i in range(len(REPORT_COLUMNS))]
        numeric = {1, 3, 4}
        lines = [
            "  ".join(
                cell.rjust(widths[i]) if i in numeric else cell.ljust(widths[i])
                for i, cell in enumerate(line)
            ).rstrip()
            for line in table
        ]
        return "\n".join(lines) + "\n"

    def export_ladder_csv(self, ladder: LadderResult, output_path: Path) -> None:
        """Export noise ladder rows as p1,p2,mad_sim,mad_mms."""
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["p1", "p2", "mad_sim", "mad_mms"])
            for row in ladder.rows:
                writer.writerow([row.p1, row.p2, self._fmt(row.mad_sim), self._fmt(row.mad_mms)])

        logger.info("ladder_csv_exported", path=str(output_path), levels=len(ladder.rows))
