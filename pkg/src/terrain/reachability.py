"""Unit-level reachability of a terrain arrangement under robot capabilities"""

from collections import deque
from typing import Dict, List, NamedTuple, Sequence, Set, Tuple

import numpy as np
from scipy import ndimage

from .models import Footprint, TerrainGrid, TerrainUnitSpec, UnitKind

# side -> (d_row, d_col); rows grow with +y, cols with +x
SIDES = {
    "south": (-1, 0),
    "north": (1, 0),
    "west": (0, -1),
    "east": (0, 1),
}
OPPOSITE = {"south": "north", "north": "south", "west": "east", "east": "west"}


class Reachability(NamedTuple):
    """Outcome of a reachability check"""
    ok: bool
    diagnostic: str
    unreachable: Tuple[Tuple[int, int], ...] = ()


def _crossable(unit: TerrainUnitSpec, caps) -> bool:
    if unit.kind == UnitKind.GAP:
        return unit.param <= caps.max_gap
    if unit.kind == UnitKind.BOX:
        return unit.param <= caps.max_climb
    if unit.kind == UnitKind.HURDLE:
        return unit.param <= caps.max_hurdle
    return True


def _side_components(
    unit: TerrainUnitSpec,
    blockers: Sequence[Footprint],
    body_radius: float,
    resolution: float
) -> List[Set[str]]:
    """
    Free regions of a unit and the sides each one touches.

    Blocking footprints are grown by the body radius and rasterized over the
    unit; every connected free region touching the unit border is one entry.

    Returns:
        One side set per border-touching free region, empty when the unit is sealed
    """
    x0, y0, x1, y1 = unit.bounds
    grown = [f.grown(body_radius) for f in blockers]
    grown = [f for f in grown if f.overlaps(x0, y0, x1, y1)]
    if not grown:
        return [set(SIDES)]

    nx = max(1, round(unit.extent[0] / resolution))
    ny = max(1, round(unit.extent[1] / resolution))
    xs = x0 + (np.arange(nx) + 0.5) * resolution
    ys = y0 + (np.arange(ny) + 0.5) * resolution
    gx, gy = np.meshgrid(xs, ys)
    blocked = np.zeros((ny, nx), dtype=bool)
    for f in grown:
        blocked |= (gx >= f.x_min) & (gx <= f.x_max) & (gy >= f.y_min) & (gy <= f.y_max)

    labels, count = ndimage.label(~blocked)
    components = []
    for label in range(1, count + 1):
        region = labels == label
        sides = set()
        if region[0, :].any():
            sides.add("south")
        if region[-1, :].any():
            sides.add("north")
        if region[:, 0].any():
            sides.add("west")
        if region[:, -1].any():
            sides.add("east")
        if sides:
            components.append(sides)
    return components


def units_reachability(
    units: Sequence[Sequence[TerrainUnitSpec]],
    footprints: Sequence[Footprint],
    capabilities,
    resolution: float,
    start_row: int = 0
) -> Reachability:
    """
    Flood fill over unit free regions from the start row.

    A unit can be entered when its feature is within the capability limits;
    bypass-only footprints split it into free regions, and a move between
    neighbors goes from a region touching the shared side to a region of the
    neighbor touching the opposite side. A unit counts as reached when any
    of its regions is.

    Args:
        units: Unit matrix (local indices, row 0 first)
        footprints: Footprints belonging to these units
        capabilities: RobotCapabilities
        resolution: Raster cell size for the bypass check (m)
        start_row: Local row index of the start row

    Returns:
        Reachability report naming unreachable units and the cut row
    """
    rows, cols = len(units), len(units[0])
    bypass = [f for f in footprints if f.kind.must_bypass]

    regions: Dict[Tuple[int, int], List[Set[str]]] = {}
    for r in range(rows):
        for c in range(cols):
            unit = units[r][c]
            if not _crossable(unit, capabilities):
                regions[(r, c)] = []
                continue
            x0, y0, x1, y1 = unit.bounds
            blockers = [
                f for f in bypass
                if f.grown(capabilities.body_radius).overlaps(x0, y0, x1, y1)
            ]
            regions[(r, c)] = _side_components(unit, blockers, capabilities.body_radius, resolution)

    visited: Set[Tuple[int, int, int]] = set()
    queue = deque()
    for c in range(cols):
        for k in range(len(regions[(start_row, c)])):
            visited.add((start_row, c, k))
            queue.append((start_row, c, k))

    while queue:
        r, c, k = queue.popleft()
        for side in regions[(r, c)][k]:
            dr, dc = SIDES[side]
            nr, nc = r + dr, c + dc
            if not (0 <= nr < rows and 0 <= nc < cols):
                continue
            for nk, there in enumerate(regions[(nr, nc)]):
                if OPPOSITE[side] in there and (nr, nc, nk) not in visited:
                    visited.add((nr, nc, nk))
                    queue.append((nr, nc, nk))

    # any reached free region counts, the unit center may itself sit inside an obstacle
    reached = {(r, c) for r, c, _ in visited}
    missing = tuple(
        (units[r][c].row, units[r][c].col)
        for r in range(rows) for c in range(cols) if (r, c) not in reached
    )
    if not missing:
        return Reachability(True, f"all {rows * cols} units reachable")

    cut_rows = [r for r in range(rows) if not any((r, c) in reached for c in range(cols))]
    if cut_rows:
        cut = units[cut_rows[0]][0].row
        diagnostic = f"reachability cut at row {cut}; {len(missing)} unreachable units"
    else:
        diagnostic = f"{len(missing)} unreachable units, first at {missing[0]}"
    return Reachability(False, diagnostic, missing)


def validate_reachability(grid: TerrainGrid, capabilities) -> Reachability:
    """
    Check that every unit is reachable from its start row.

    WP-Random grids are checked area by area from each area's flat start
    row, each area against its own features and any walls; other grids are
    checked as one area starting at row 0. An Obstacle unit counts as
    reachable when free space around its obstacles is.

    Args:
        grid: Terrain to check
        capabilities: RobotCapabilities limits

    Returns:
        Reachability (ok, diagnostic, unreachable units)
    """
    area_rows, area_cols = grid.area_shape or (grid.rows, grid.cols)
    problems = []
    unreachable: List[Tuple[int, int]] = []
    for ar in range(grid.rows // area_rows):
        for ac in range(grid.cols // area_cols):
            rows = range(ar * area_rows, (ar + 1) * area_rows)
            cols = range(ac * area_cols, (ac + 1) * area_cols)
            units = [grid.units[r][cols.start:cols.stop] for r in rows]
            x0, y0, _, _ = units[0][0].bounds
            _, _, x1, y1 = units[-1][-1].bounds
            local = [
                f for f in grid.obstacles
                if (f.unit is not None and f.unit[0] in rows and f.unit[1] in cols)
                or (f.unit is None and f.grown(capabilities.body_radius).overlaps(x0, y0, x1, y1))
            ]
            report = units_reachability(units, local, capabilities, grid.resolution)
            if not report.ok:
                prefix = f"area ({ar}, {ac}): " if grid.area_shape else ""
                problems.append(prefix + report.diagnostic)
                unreachable.extend(report.unreachable)

    if problems:
        return Reachability(False, "; ".join(problems), tuple(unreachable))
    return Reachability(True, f"all {grid.rows * grid.cols} units reachable")
