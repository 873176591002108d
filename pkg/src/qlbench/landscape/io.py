"""
Landscape files: JSON artifact and CSV export.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from pydantic import ValidationError

from qlbench.core.errors import DataError
from qlbench.core.logging import get_logger
from qlbench.landscape.models import Landscape

logger = get_logger(__name__)


def save_landscape(landscape: Landscape, path: Path) -> None:
    """Write the JSON artifact {"grid", "energies", "meta"}."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(landscape.to_dict(), f, indent=2)
        f.write("\n")
    logger.info("landscape_saved", path=str(path))


def load_landscape(path: Path) -> Landscape:
    """
    Read a landscape JSON artifact.

    Raises:
        DataError: If the file is missing or malformed
    """
    if not path.exists():
        raise DataError(f"landscape file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        return Landscape.from_dict(data)
    except json.JSONDecodeError as e:
        raise DataError(f"{path}: invalid JSON: {e}") from e
    except (KeyError, TypeError, ValidationError) as e:
        raise DataError(f"{path}: not a landscape file: {e}") from e


def export_landscape_csv(landscape: Landscape, path: Path) -> int:
    """
    Write gamma,beta,energy rows ordered by gamma then beta.

    Returns:
        Number of data rows written
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["gamma", "beta", "energy"])
        for gamma, energies in zip(landscape.grid.gamma_values, landscape.energies):
            for beta, energy in zip(landscape.grid.beta_values, energies):
                writer.writerow([repr(gamma), repr(beta), repr(energy)])
                rows += 1
    logger.info("landscape_csv_exported", path=str(path), rows=rows)
    return rows
