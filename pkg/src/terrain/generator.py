"""Procedural generation of the WP-Fixed, WP-Random and test-arena terrains"""

import math
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..errors import TerrainGenerationError
from .models import (
    FeatureKind,
    Footprint,
    PARAM_RANGES,
    Scenario,
    TerrainGrid,
    TerrainUnitSpec,
    UnitKind,
    unit_param,
)

DEFAULT_UNIT_SIZE = 2.0
DEFAULT_RESOLUTION = 0.05
UNITS_PER_TRACK = 6
AREA_SHAPE = (6, 5)
GAP_DEPTH = 1.0
HURDLE_THICKNESS = 0.1
BOX_LENGTH = 1.0
OBSTACLE_HEIGHT = 1.0
WALL_HEIGHT = 1.0
MAX_AREA_RETRIES = 32

# Flat carries double weight in the WP-Random draw
RANDOM_KIND_WEIGHTS = {
    UnitKind.FLAT: 2.0,
    UnitKind.HURDLE: 1.0,
    UnitKind.BOX: 1.0,
    UnitKind.GAP: 1.0,
    UnitKind.OBSTACLE: 1.0,
}

KindAssignment = Union[UnitKind, Sequence[UnitKind], Callable[[int, int], UnitKind]]


def _cells_per(length: float, resolution: float) -> int:
    """Number of heightfield cells spanning a length; must divide exactly"""
    cells = round(length / resolution)
    if cells <= 0 or abs(cells * resolution - length) > 1e-9 * max(1.0, length):
        raise ValueError(
            f"Length {length} m is not a whole number of {resolution} m cells"
        )
    return cells


def _cell_range(lo: float, hi: float, resolution: float, n: int) -> Tuple[int, int]:
    """Indices of cells whose centers fall in [lo, hi)"""
    start = math.ceil(lo / resolution - 0.5 - 1e-9)
    stop = math.ceil(hi / resolution - 0.5 - 1e-9)
    return max(start, 0), min(stop, n)


def rasterize(
    size: Tuple[float, float],
    resolution: float,
    footprints: Sequence[Footprint],
    gap_depth: float = GAP_DEPTH
) -> np.ndarray:
    """
    Rasterize feature footprints into a heightfield sampled at cell centers.

    Args:
        size: World extent (x, y) in meters
        resolution: Cell size in meters
        footprints: Features to burn in
        gap_depth: Depth of gap trenches

    Returns:
        Array of shape (ny, nx); raised features win over trenches
    """
    nx = _cells_per(size[0], resolution)
    ny = _cells_per(size[1], resolution)
    raised = np.zeros((ny, nx), dtype=float)
    trench = np.zeros((ny, nx), dtype=bool)

    for fp in footprints:
        x0, x1 = _cell_range(fp.x_min, fp.x_max, resolution, nx)
        y0, y1 = _cell_range(fp.y_min, fp.y_max, resolution, ny)
        if x0 >= x1 or y0 >= y1:
            continue
        if fp.kind == FeatureKind.GAP:
            trench[y0:y1, x0:x1] = True
        else:
            np.maximum(raised[y0:y1, x0:x1], fp.height, out=raised[y0:y1, x0:x1])

    return np.where(raised > 0.0, raised, np.where(trench, -gap_depth, 0.0))


def unit_features(
    unit: TerrainUnitSpec,
    rng: np.random.Generator,
    obstacles_per_unit: Tuple[int, int] = (1, 3),
    gap_depth: float = GAP_DEPTH
) -> List[Footprint]:
    """
    Footprints of a unit's obstacle feature; the traversal axis is world +x.

    Box: platform of BOX_LENGTH around the center spanning the unit width.
    Hurdle: thin bar across the unit at its center. Gap: trench of width
    param across the unit at its center. Obstacle: 1-3 tall squares of side
    param at random positions inside the unit.
    """
    x0, y0, x1, y1 = unit.bounds
    cx, _ = unit.center
    index = (unit.row, unit.col)

    if unit.kind == UnitKind.FLAT:
        return []
    if unit.kind == UnitKind.BOX:
        half = 0.5 * min(BOX_LENGTH, 0.5 * unit.extent[0])
        return [Footprint(cx - half, y0, cx + half, y1, unit.param, FeatureKind.BOX, index)]
    if unit.kind == UnitKind.HURDLE:
        half = 0.5 * HURDLE_THICKNESS
        return [Footprint(cx - half, y0, cx + half, y1, unit.param, FeatureKind.HURDLE, index)]
    if unit.kind == UnitKind.GAP:
        half = 0.5 * unit.param
        return [Footprint(cx - half, y0, cx + half, y1, -gap_depth, FeatureKind.GAP, index)]

    low, high = obstacles_per_unit
    count = int(rng.integers(low, high + 1))
    side_x = min(unit.param, unit.extent[0])
    side_y = min(unit.param, unit.extent[1])
    footprints = []
    for _ in range(count):
        ox = x0 + rng.uniform(0.0, unit.extent[0] - side_x)
        oy = y0 + rng.uniform(0.0, unit.extent[1] - side_y)
        footprints.append(
            Footprint(ox, oy, ox + side_x, oy + side_y, OBSTACLE_HEIGHT, FeatureKind.OBSTACLE, index)
        )
    return footprints


def _make_unit(
    kind: UnitKind,
    scenario: Scenario,
    difficulty: float,
    row: int,
    col: int,
    unit_size: float,
    unit_width: float,
    param: Optional[float] = None
) -> TerrainUnitSpec:
    return TerrainUnitSpec(
        kind=kind,
        difficulty=difficulty,
        param=unit_param(kind, scenario, difficulty) if param is None else param,
        origin=(col * unit_size, row * unit_width),
        extent=(unit_size, unit_width),
        row=row,
        col=col,
    )


def _resolve_difficulties(difficulty: Union[None, float, Sequence[float]], rows: int) -> List[float]:
    if difficulty is None:
        # curriculum: one level per row
        if rows == 1:
            return [0.0]
        return [row / (rows - 1) for row in range(rows)]
    if isinstance(difficulty, (int, float)):
        levels = [float(difficulty)] * rows
    else:
        levels = [float(d) for d in difficulty]
        if len(levels) != rows:
            raise ValueError(f"Expected {rows} per-row difficulties, got {len(levels)}")
    for level in levels:
        if not 0.0 <= level <= 1.0:
            raise ValueError(f"difficulty must lie in [0, 1], got {level}")
    return levels


def _resolve_kind(kind_assignment: KindAssignment, track_row: int, track_col: int, cols: int) -> UnitKind:
    if isinstance(kind_assignment, UnitKind):
        return kind_assignment
    if callable(kind_assignment):
        return UnitKind(kind_assignment(track_row, track_col))
    kinds = list(kind_assignment)
    if not kinds:
        raise ValueError("kind_assignment must name at least one kind")
    return UnitKind(kinds[(track_row * cols + track_col) % len(kinds)])


def generate_wp_fixed(
    rows: int,
    cols: int,
    kind_assignment: KindAssignment,
    difficulty: Union[None, float, Sequence[float]] = None,
    seed: int = 0,
    unit_size: float = DEFAULT_UNIT_SIZE,
    track_width: Optional[float] = None,
    resolution: float = DEFAULT_RESOLUTION,
    obstacles_per_unit: Tuple[int, int] = (1, 3),
    units_per_track: int = UNITS_PER_TRACK
) -> TerrainGrid:
    """
    Generate the WP-Fixed scenario: rows x cols tracks of same-kind units.

    Args:
        rows: Rows of tracks
        cols: Tracks per row
        kind_assignment: One kind, a sequence cycled over tracks in
            row-major order, or a callable (track_row, track_col) -> kind
        difficulty: Per-row scalars, one scalar for all rows, or None for
            the row curriculum i / (rows - 1)
        seed: Seed for obstacle placement
        unit_size: Unit length along the track (m)
        track_width: Unit extent across the track (m), defaults to unit_size
        resolution: Heightfield cell size (m)
        obstacles_per_unit: Inclusive range of obstacle footprints per Obstacle unit
        units_per_track: Units in one track

    Returns:
        TerrainGrid with scenario WP_FIXED
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be >= 1, got {rows}x{cols}")
    levels = _resolve_difficulties(difficulty, rows)
    unit_width = track_width or unit_size
    rng = np.random.default_rng(seed)

    units = []
    footprints: List[Footprint] = []
    for row in range(rows):
        unit_row = []
        for track in range(cols):
            kind = _resolve_kind(kind_assignment, row, track, cols)
            for k in range(units_per_track):
                unit = _make_unit(
                    kind, Scenario.WP_FIXED, levels[row], row,
                    track * units_per_track + k, unit_size, unit_width,
                )
                unit_row.append(unit)
                footprints.extend(unit_features(unit, rng, obstacles_per_unit))
        units.append(tuple(unit_row))

    size = (cols * units_per_track * unit_size, rows * unit_width)
    grid = TerrainGrid(
        units=tuple(units),
        unit_size=unit_size,
        unit_width=unit_width,
        resolution=resolution,
        heightfield=rasterize(size, resolution, footprints),
        obstacles=tuple(footprints),
        scenario=Scenario.WP_FIXED,
        units_per_track=units_per_track,
        gap_depth=GAP_DEPTH,
        seed=seed,
    )
    logger.info(
        f"Generated WP-Fixed terrain: {rows}x{cols} tracks, "
        f"{rows * cols * units_per_track} units, {len(footprints)} features"
    )
    return grid


def _draw_area(
    rng: np.random.Generator,
    area_row: int,
    area_col: int,
    area_shape: Tuple[int, int],
    difficulty: float,
    unit_size: float,
    obstacles_per_unit: Tuple[int, int]
) -> Tuple[List[List[TerrainUnitSpec]], List[Footprint]]:
    kinds = list(RANDOM_KIND_WEIGHTS)
    weights = np.array([RANDOM_KIND_WEIGHTS[k] for k in kinds])
    weights = weights / weights.sum()

    area_rows, area_cols = area_shape
    units: List[List[TerrainUnitSpec]] = []
    footprints: List[Footprint] = []
    for i in range(area_rows):
        unit_row = []
        for j in range(area_cols):
            if i == 0:
                kind = UnitKind.FLAT
            else:
                kind = kinds[int(rng.choice(len(kinds), p=weights))]
            unit = _make_unit(
                kind, Scenario.WP_RANDOM, difficulty,
                area_row * area_rows + i, area_col * area_cols + j,
                unit_size, unit_size,
            )
            unit_row.append(unit)
            footprints.extend(unit_features(unit, rng, obstacles_per_unit))
        units.append(unit_row)
    return units, footprints


def generate_wp_random(
    areas_rows: int,
    areas_cols: int,
    difficulty: float,
    seed: int = 0,
    capabilities=None,
    unit_size: float = DEFAULT_UNIT_SIZE,
    resolution: float = DEFAULT_RESOLUTION,
    obstacles_per_unit: Tuple[int, int] = (1, 3),
    area_shape: Tuple[int, int] = AREA_SHAPE,
    max_retries: int = MAX_AREA_RETRIES
) -> TerrainGrid:
    """
    Generate the WP-Random scenario: areas of randomized units with a flat start row.

    Each area is redrawn until every unit is reachable from its start row
    under the given capabilities, up to max_retries draws.

    Args:
        areas_rows: Rows of areas
        areas_cols: Columns of areas
        difficulty: Curriculum level in [0, 1]
        seed: Seed for kinds and obstacle placement
        capabilities: RobotCapabilities for the reachability check (defaults used if None)
        unit_size: Unit side (m)
        resolution: Heightfield cell size (m)
        obstacles_per_unit: Inclusive range of obstacle footprints per Obstacle unit
        area_shape: Units per area (rows, cols)
        max_retries: Draws per area before giving up

    Returns:
        TerrainGrid with scenario WP_RANDOM
    """
    from ..robot.models import RobotCapabilities
    from .reachability import units_reachability

    if not 0.0 <= difficulty <= 1.0:
        raise ValueError(f"difficulty must lie in [0, 1], got {difficulty}")
    if areas_rows < 1 or areas_cols < 1:
        raise ValueError(f"areas_rows and areas_cols must be >= 1, got {areas_rows}x{areas_cols}")
    caps = capabilities or RobotCapabilities()

    area_rows, area_cols = area_shape
    rows, cols = areas_rows * area_rows, areas_cols * area_cols
    grid_units: List[List[Optional[TerrainUnitSpec]]] = [[None] * cols for _ in range(rows)]
    footprints: List[Footprint] = []

    for ar in range(areas_rows):
        for ac in range(areas_cols):
            diagnostic = ""
            for attempt in range(max_retries):
                rng = np.random.default_rng([seed, ar, ac, attempt])
                units, area_fps = _draw_area(
                    rng, ar, ac, area_shape, difficulty, unit_size, obstacles_per_unit
                )
                report = units_reachability(units, area_fps, caps, resolution)
                if report.ok:
                    break
                diagnostic = report.diagnostic
                logger.debug(f"Area ({ar}, {ac}) attempt {attempt} rejected: {diagnostic}")
            else:
                raise TerrainGenerationError(
                    f"No reachable arrangement for area ({ar}, {ac}) after "
                    f"{max_retries} draws; last failure: {diagnostic}"
                )
            for unit_row in units:
                for unit in unit_row:
                    grid_units[unit.row][unit.col] = unit
            footprints.extend(area_fps)

    size = (cols * unit_size, rows * unit_size)
    grid = TerrainGrid(
        units=tuple(tuple(r) for r in grid_units),
        unit_size=unit_size,
        resolution=resolution,
        heightfield=rasterize(size, resolution, footprints),
        obstacles=tuple(footprints),
        scenario=Scenario.WP_RANDOM,
        area_shape=area_shape,
        gap_depth=GAP_DEPTH,
        seed=seed,
    )
    logger.info(
        f"Generated WP-Random terrain: {areas_rows}x{areas_cols} areas, "
        f"{rows * cols} units at difficulty {difficulty:.2f}"
    )
    return grid


def build_custom_grid(
    kinds: Sequence[Sequence[UnitKind]],
    unit_size: float = DEFAULT_UNIT_SIZE,
    difficulty: float = 1.0,
    params: Optional[Sequence[Sequence[Optional[float]]]] = None,
    extra_features: Sequence[Footprint] = (),
    seed: int = 0,
    resolution: float = DEFAULT_RESOLUTION,
    obstacles_per_unit: Tuple[int, int] = (1, 3)
) -> TerrainGrid:
    """
    Assemble a custom grid from explicit unit kinds plus extra footprints.

    Args:
        kinds: Unit kinds, one row per grid row
        unit_size: Unit side (m)
        difficulty: Level used for params not given explicitly
        params: Optional explicit params overriding the curriculum value
        extra_features: Walls or other footprints added as-is
        seed: Seed for obstacle placement
        resolution: Heightfield cell size (m)
        obstacles_per_unit: Inclusive range of obstacle footprints per Obstacle unit

    Returns:
        TerrainGrid with scenario CUSTOM
    """
    if not kinds or not kinds[0]:
        raise ValueError("Custom grid needs at least one unit")
    rng = np.random.default_rng(seed)
    units = []
    footprints: List[Footprint] = []
    for r, kind_row in enumerate(kinds):
        unit_row = []
        for c, kind in enumerate(kind_row):
            param = params[r][c] if params is not None else None
            unit = _make_unit(
                UnitKind(kind), Scenario.CUSTOM, difficulty, r, c, unit_size, unit_size, param
            )
            unit_row.append(unit)
            footprints.extend(unit_features(unit, rng, obstacles_per_unit))
        units.append(tuple(unit_row))
    footprints.extend(extra_features)

    size = (len(kinds[0]) * unit_size, len(kinds) * unit_size)
    return TerrainGrid(
        units=tuple(units),
        unit_size=unit_size,
        resolution=resolution,
        heightfield=rasterize(size, resolution, footprints),
        obstacles=tuple(footprints),
        scenario=Scenario.CUSTOM,
        gap_depth=GAP_DEPTH,
        seed=seed,
    )


def wall(x_min: float, y_min: float, x_max: float, y_max: float, height: float = WALL_HEIGHT) -> Footprint:
    """Wall footprint for custom grids and occupancy maps"""
    return Footprint(x_min, y_min, x_max, y_max, height, FeatureKind.WALL)


def generate_arena(
    units_per_side: int = 7,
    unit_size: float = 3.0,
    kinds: Sequence[UnitKind] = (UnitKind.FLAT,),
    difficulty: float = 1.0,
    with_obstacles: bool = False,
    obstacle_fraction: float = 0.25,
    seed: int = 0,
    resolution: float = DEFAULT_RESOLUTION
) -> TerrainGrid:
    """
    Square omni-traverse arena with a flat center unit.

    Feature parameters follow the highest WP-Random curriculum level
    (difficulty 1.0 by default). With obstacles, a fraction of the non-center
    units become Obstacle units.
    """
    if units_per_side % 2 == 0:
        raise ValueError("Arena needs an odd number of units per side to have a center unit")
    rng = np.random.default_rng(seed)
    center = units_per_side // 2
    choices = [UnitKind(k) for k in kinds] or [UnitKind.FLAT]

    layout = []
    for r in range(units_per_side):
        row = []
        for c in range(units_per_side):
            kind = choices[int(rng.integers(len(choices)))]
            if with_obstacles and rng.uniform() < obstacle_fraction:
                kind = UnitKind.OBSTACLE
            if r == center and c == center:
                kind = UnitKind.FLAT
            row.append(kind)
        layout.append(row)

    lo, hi = PARAM_RANGES[Scenario.CUSTOM][UnitKind.OBSTACLE]
    logger.info(
        f"Building {units_per_side * unit_size:.0f} m arena "
        f"(kinds={[k.value for k in choices]}, obstacles={with_obstacles}, obstacle size {lo}-{hi} m)"
    )
    return build_custom_grid(
        layout,
        unit_size=unit_size,
        difficulty=difficulty,
        seed=int(rng.integers(2**31)),
        resolution=resolution,
    )
