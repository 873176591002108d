"""
Grayscale PGM heatmaps of landscapes.

Byte layout (binary PGM, "P5"):

    b"P5\\n" + f"{width} {height}\\n".encode() + b"255\\n" + pixels

width = number of gamma values, height = number of beta values. Pixels are
one unsigned byte each, row-major from the top row. gamma grows left to
right; beta grows bottom to top, so the top row holds the largest beta.
Energies map linearly from the landscape minimum (0, black) to its maximum
(255, white), rounded to the nearest integer. A constant landscape maps to
128 everywhere.

With mark_minimum the image gets a 1-pixel frame of value 128 around the
data; the four frame pixels in line with the minimum (its column at top and
bottom, its row at left and right) are 255. Data pixels are never altered.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from qlbench.core.logging import get_logger
from qlbench.landscape.models import Landscape

logger = get_logger(__name__)

MAX_GRAY = 255
MID_GRAY = 128


def heatmap_pixels(landscape: Landscape) -> np.ndarray:
    """Pixel matrix of shape (height, width) = (|beta|, |gamma|), top row first."""
    m = landscape.matrix()
    low, high = float(m.min()), float(m.max())
    if high == low:
        levels = np.full(m.shape, MID_GRAY, dtype=np.uint8)
    else:
        levels = np.rint((m - low) / (high - low) * MAX_GRAY).astype(np.uint8)
    # m is [gamma][beta]; the image is [beta descending][gamma]
    return np.ascontiguousarray(levels.T[::-1, :])


def _framed(pixels: np.ndarray, landscape: Landscape) -> np.ndarray:
    height, width = pixels.shape
    framed = np.full((height + 2, width + 2), MID_GRAY, dtype=np.uint8)
    framed[1:-1, 1:-1] = pixels
    gi, bi = np.unravel_index(int(np.argmin(landscape.matrix())), landscape.grid.shape)
    row = 1 + (height - 1 - int(bi))
    col = 1 + int(gi)
    framed[0, col] = framed[-1, col] = MAX_GRAY
    framed[row, 0] = framed[row, -1] = MAX_GRAY
    return framed


def encode_pgm(pixels: np.ndarray) -> bytes:
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n{MAX_GRAY}\n".encode("ascii")
    return header + pixels.astype(np.uint8).tobytes()


def write_heatmap(landscape: Landscape, path: Path, mark_minimum: bool = False) -> bytes:
    """
    Write a landscape as a PGM image.

    Returns:
        The bytes written
    """
    pixels = heatmap_pixels(landscape)
    if mark_minimum:
        pixels = _framed(pixels, landscape)
    data = encode_pgm(pixels)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    logger.info("heatmap_written", path=str(path), width=pixels.shape[1], height=pixels.shape[0])
    return data
