"""Landscape comparison metrics."""

from qlbench.metrics.ladder import (
    DEFAULT_LEVELS,
    LadderResult,
    LadderRow,
    ladder_descriptor,
    noise_ladder,
    shot_noise_slack,
)
from qlbench.metrics.mad import (
    check_reference,
    exact_reference,
    mad,
    mad_mms,
    mad_sim,
    mms_landscape,
)
from qlbench.metrics.report import REPORT_COLUMNS, MadReport, MadRow, report

__all__ = [
    "mad",
    "mad_sim",
    "mad_mms",
    "mms_landscape",
    "check_reference",
    "exact_reference",
    "MadRow",
    "MadReport",
    "REPORT_COLUMNS",
    "report",
    "noise_ladder",
    "ladder_descriptor",
    "shot_noise_slack",
    "LadderRow",
    "LadderResult",
    "DEFAULT_LEVELS",
]
