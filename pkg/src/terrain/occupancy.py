"""Occupancy maps derived from terrain, with ASCII import/export"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from loguru import logger

from ..geometry import Vec2
from .models import FeatureKind, TerrainGrid

DEFAULT_HEIGHT_THRESHOLD = 0.5


@dataclass(frozen=True, eq=False)
class OccupancyMap:
    """Boolean grid; cells[i, j] covers x in origin.x + [j, j+1) * cell_size, y likewise with i"""
    cells: np.ndarray
    cell_size: float
    origin: Vec2 = (0.0, 0.0)

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ValueError(f"cell_size must be positive, got {self.cell_size}")
        if self.cells.ndim != 2:
            raise ValueError("Occupancy cells must be a 2D array")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.cells.shape

    def in_bounds(self, cell: Tuple[int, int]) -> bool:
        rows, cols = self.cells.shape
        return 0 <= cell[0] < rows and 0 <= cell[1] < cols

    def is_free(self, cell: Tuple[int, int]) -> bool:
        return not bool(self.cells[cell])

    def cell_of(self, point: Vec2) -> Tuple[int, int]:
        """Cell (row, col) containing a world point; may be out of bounds"""
        col = math.floor((point[0] - self.origin[0]) / self.cell_size)
        row = math.floor((point[1] - self.origin[1]) / self.cell_size)
        return (row, col)

    def cell_center(self, cell: Tuple[int, int]) -> Vec2:
        return (
            self.origin[0] + (cell[1] + 0.5) * self.cell_size,
            self.origin[1] + (cell[0] + 0.5) * self.cell_size,
        )

    def to_ascii(self) -> str:
        rows, cols = self.cells.shape
        lines = [f"occupancy {rows} {cols} {self.cell_size:g}"]
        for row in self.cells:
            lines.append("".join("#" if v else "." for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ascii(cls, text: str) -> "OccupancyMap":
        lines = [line.rstrip("\r") for line in text.splitlines() if line.strip()]
        if not lines:
            raise ValueError("Empty occupancy map")
        header = lines[0].split()
        if len(header) != 4 or header[0] != "occupancy":
            raise ValueError(f"Bad occupancy header: {lines[0]!r}")
        rows, cols, cell_size = int(header[1]), int(header[2]), float(header[3])
        body = lines[1:]
        if len(body) != rows or any(len(line) != cols for line in body):
            raise ValueError(f"Occupancy body does not match header {rows}x{cols}")
        if any(ch not in "#." for line in body for ch in line):
            raise ValueError("Occupancy rows may only contain '#' and '.'")
        cells = np.array([[ch == "#" for ch in line] for line in body], dtype=bool)
        return cls(cells=cells, cell_size=cell_size)


def to_occupancy(
    grid: TerrainGrid,
    cell: float,
    wall_only: bool = True,
    height_threshold: float = DEFAULT_HEIGHT_THRESHOLD
) -> OccupancyMap:
    """
    Rasterize planner-facing footprints into an occupancy map.

    A cell is occupied when it shares positive area with a marked footprint.

    Args:
        grid: Terrain (its virtual obstacles are used)
        cell: Cell size in meters
        wall_only: Mark only wall footprints
        height_threshold: Otherwise mark every footprint taller than this

    Returns:
        OccupancyMap covering the terrain
    """
    if cell <= 0:
        raise ValueError(f"cell must be positive, got {cell}")
    size_x, size_y = grid.size
    cols = max(1, math.ceil(size_x / cell - 1e-9))
    rows = max(1, math.ceil(size_y / cell - 1e-9))
    cells = np.zeros((rows, cols), dtype=bool)

    for fp in grid.virtual_obstacles:
        if wall_only:
            if fp.kind != FeatureKind.WALL:
                continue
        elif fp.height <= height_threshold:
            continue
        # strict overlap: cell j spans [j*cell, (j+1)*cell)
        j0 = max(0, math.floor(fp.x_min / cell + 1e-9))
        j1 = min(cols, math.ceil(fp.x_max / cell - 1e-9))
        i0 = max(0, math.floor(fp.y_min / cell + 1e-9))
        i1 = min(rows, math.ceil(fp.y_max / cell - 1e-9))
        cells[i0:i1, j0:j1] = True

    logger.debug(f"Occupancy map {rows}x{cols} at {cell} m: {int(cells.sum())} occupied cells")
    return OccupancyMap(cells=cells, cell_size=cell)


def save_occupancy(occupancy: OccupancyMap, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(occupancy.to_ascii())
    return path


def load_occupancy(path: Union[str, Path]) -> OccupancyMap:
    return OccupancyMap.from_ascii(Path(path).read_text())
