"""Visit-frequency heatmaps and their text/image exports"""

import math
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from loguru import logger
from PIL import Image

from ..geometry import Vec2
from .models import EpisodeLog, Heatmap

DEFAULT_CELL = 0.25


def accumulate_heatmap(
    logs: Sequence[EpisodeLog],
    cell: float = DEFAULT_CELL,
    extent: Optional[Vec2] = None,
    origin: Vec2 = (0.0, 0.0)
) -> Heatmap:
    """
    Count trajectory samples per cell.

    With an extent the map covers origin .. origin + extent and samples on
    or past the border land in the edge cells; without one it covers the
    bounding box of all samples. Either way the counts sum to the number
    of samples.

    Args:
        logs: Episode logs
        cell: Cell size (m)
        extent: Covered size (x, y) in meters
        origin: Lower-left corner when an extent is given

    Returns:
        Heatmap
    """
    if cell <= 0:
        raise ValueError(f"cell must be positive, got {cell}")
    positions = [log.positions() for log in logs]
    points = np.concatenate(positions) if positions else np.zeros((0, 2))

    if extent is not None:
        cols = max(1, math.ceil(extent[0] / cell - 1e-9))
        rows = max(1, math.ceil(extent[1] / cell - 1e-9))
    elif len(points):
        origin = (
            math.floor(points[:, 0].min() / cell) * cell,
            math.floor(points[:, 1].min() / cell) * cell,
        )
        cols = math.floor((points[:, 0].max() - origin[0]) / cell) + 1
        rows = math.floor((points[:, 1].max() - origin[1]) / cell) + 1
    else:
        rows = cols = 1

    counts = np.zeros((rows, cols), dtype=np.int64)
    if len(points):
        j = np.clip(np.floor((points[:, 0] - origin[0]) / cell).astype(int), 0, cols - 1)
        i = np.clip(np.floor((points[:, 1] - origin[1]) / cell).astype(int), 0, rows - 1)
        np.add.at(counts, (i, j), 1)
    return Heatmap(counts=counts, cell=cell, origin=origin)


def save_heatmap_text(heatmap: Heatmap, path: Union[str, Path]) -> Path:
    """Integer matrix, row 0 (lowest y) first, under a metadata header"""
    path = Path(path)
    rows, cols = heatmap.counts.shape
    header = (
        f"heatmap rows {rows} cols {cols} cell {heatmap.cell:g} "
        f"origin {heatmap.origin[0]:g} {heatmap.origin[1]:g} total {heatmap.total}"
    )
    np.savetxt(path, heatmap.counts, fmt="%d", header=header)
    return path


def load_heatmap_text(path: Union[str, Path]) -> Heatmap:
    path = Path(path)
    with path.open() as f:
        header = f.readline().lstrip("#").split()
    if not header or header[0] != "heatmap":
        raise ValueError(f"{path}: not a heatmap file")

    def field(name: str, offset: int = 1) -> str:
        return header[header.index(name) + offset]

    rows, cols = int(field("rows")), int(field("cols"))
    origin = (float(field("origin")), float(field("origin", 2)))
    counts = np.loadtxt(path, dtype=np.int64, ndmin=2).reshape(rows, cols)
    return Heatmap(counts=counts, cell=float(field("cell")), origin=origin)


def save_heatmap_image(heatmap: Heatmap, path: Union[str, Path]) -> Path:
    """8-bit grayscale image, darker = more visits, max-normalized, y up"""
    path = Path(path)
    counts = heatmap.counts.astype(float)
    peak = counts.max()
    scaled = counts / peak if peak > 0 else counts
    pixels = np.round(255.0 * (1.0 - scaled)).astype(np.uint8)
    Image.fromarray(np.flipud(pixels), mode="L").save(path)
    logger.debug(f"Wrote {pixels.shape[1]}x{pixels.shape[0]} heatmap image to {path}")
    return path
