"""Terrain domain types: unit specs, feature footprints, grids and scandots"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..geometry import Vec2


class UnitKind(str, Enum):
    """Terrain unit types"""
    FLAT = "flat"
    HURDLE = "hurdle"
    BOX = "box"
    GAP = "gap"
    OBSTACLE = "obstacle"

    @property
    def code(self) -> str:
        """Single-letter code used in prompts and summaries"""
        return _KIND_CODES[self]


_KIND_CODES = {
    UnitKind.FLAT: "F",
    UnitKind.HURDLE: "H",
    UnitKind.BOX: "B",
    UnitKind.GAP: "G",
    UnitKind.OBSTACLE: "O",
}


class FeatureKind(str, Enum):
    """Kinds of axis-aligned footprints placed on the terrain"""
    HURDLE = "hurdle"
    BOX = "box"
    GAP = "gap"
    OBSTACLE = "obstacle"
    WALL = "wall"

    @property
    def must_bypass(self) -> bool:
        """Footprints the robot has to walk around rather than over"""
        return self in (FeatureKind.OBSTACLE, FeatureKind.WALL)


class Scenario(str, Enum):
    """Terrain scenario"""
    WP_FIXED = "wp_fixed"
    WP_RANDOM = "wp_random"
    CUSTOM = "custom"


# Curriculum ranges of the key obstacle property, meters: hurdle/box height,
# gap width, obstacle footprint size.
PARAM_RANGES: Dict[Scenario, Dict[UnitKind, Tuple[float, float]]] = {
    Scenario.WP_FIXED: {
        UnitKind.FLAT: (0.0, 0.0),
        UnitKind.HURDLE: (0.1, 0.4),
        UnitKind.BOX: (0.1, 0.5),
        UnitKind.GAP: (0.1, 0.9),
        UnitKind.OBSTACLE: (0.15, 1.0),
    },
    Scenario.WP_RANDOM: {
        UnitKind.FLAT: (0.0, 0.0),
        UnitKind.HURDLE: (0.1, 0.3),
        UnitKind.BOX: (0.1, 0.35),
        UnitKind.GAP: (0.1, 0.35),
        UnitKind.OBSTACLE: (0.2, 0.9),
    },
}
PARAM_RANGES[Scenario.CUSTOM] = PARAM_RANGES[Scenario.WP_RANDOM]


def unit_param(kind: UnitKind, scenario: Scenario, difficulty: float) -> float:
    """
    Key obstacle property for a unit at a curriculum difficulty.

    Args:
        kind: Unit kind
        scenario: Scenario whose range applies
        difficulty: Curriculum level in [0, 1]

    Returns:
        lo + difficulty * (hi - lo)
    """
    if not 0.0 <= difficulty <= 1.0:
        raise ValueError(f"difficulty must lie in [0, 1], got {difficulty}")
    lo, hi = PARAM_RANGES[scenario][kind]
    return lo + difficulty * (hi - lo)


@dataclass(frozen=True)
class Footprint:
    """Axis-aligned rectangle with a height; gaps carry a negative height"""
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    height: float
    kind: FeatureKind
    unit: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError(f"Degenerate footprint {self}")

    @property
    def center(self) -> Vec2:
        return (0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))

    @property
    def size(self) -> Vec2:
        return (self.x_max - self.x_min, self.y_max - self.y_min)

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)

    def contains(self, x: float, y: float) -> bool:
        """Half-open containment, the convention used for rasterization"""
        return self.x_min <= x < self.x_max and self.y_min <= y < self.y_max

    def contains_closed(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def contains_open(self, x: float, y: float) -> bool:
        return self.x_min < x < self.x_max and self.y_min < y < self.y_max

    def encloses(self, other: "Footprint") -> bool:
        return (
            self.x_min <= other.x_min and self.y_min <= other.y_min
            and self.x_max >= other.x_max and self.y_max >= other.y_max
        )

    def overlaps(self, x_min: float, y_min: float, x_max: float, y_max: float) -> bool:
        """Positive-area intersection with another rectangle"""
        return (
            self.x_min < x_max and self.x_max > x_min
            and self.y_min < y_max and self.y_max > y_min
        )

    def grown(
        self,
        margin: float,
        clip: Optional[Tuple[float, float, float, float]] = None
    ) -> "Footprint":
        """Minkowski sum with a square of half-side margin, optionally clipped"""
        x_min, y_min = self.x_min - margin, self.y_min - margin
        x_max, y_max = self.x_max + margin, self.y_max + margin
        if clip is not None:
            x_min, y_min = max(x_min, clip[0]), max(y_min, clip[1])
            x_max, y_max = min(x_max, clip[2]), min(y_max, clip[3])
        return Footprint(x_min, y_min, x_max, y_max, self.height, self.kind, self.unit)

    def line_interval(self, p0: Vec2, p1: Vec2) -> Optional[Tuple[float, float]]:
        """
        Parameter interval where the line p0 + t (p1 - p0) lies in the closed rectangle.

        Args:
            p0: Segment start
            p1: Segment end

        Returns:
            (t_in, t_out) over the infinite line, or None if the line misses
        """
        dx, dy = p1[0] - p0[0], p1[1] - p0[1]
        t_in, t_out = -math.inf, math.inf
        for origin, delta, lo, hi in (
            (p0[0], dx, self.x_min, self.x_max),
            (p0[1], dy, self.y_min, self.y_max),
        ):
            if delta == 0.0:
                if origin < lo or origin > hi:
                    return None
                continue
            a, b = (lo - origin) / delta, (hi - origin) / delta
            if a > b:
                a, b = b, a
            t_in, t_out = max(t_in, a), min(t_out, b)
        if t_in > t_out:
            return None
        return (t_in, t_out)


@dataclass(frozen=True)
class TerrainUnitSpec:
    """One terrain unit of a grid"""
    kind: UnitKind
    difficulty: float
    param: float
    origin: Vec2
    extent: Vec2
    row: int = 0
    col: int = 0

    def __post_init__(self):
        if self.extent[0] <= 0 or self.extent[1] <= 0:
            raise ValueError(f"Unit extent must be positive, got {self.extent}")

    @property
    def center(self) -> Vec2:
        return (self.origin[0] + 0.5 * self.extent[0], self.origin[1] + 0.5 * self.extent[1])

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        return (
            self.origin[0], self.origin[1],
            self.origin[0] + self.extent[0], self.origin[1] + self.extent[1],
        )


@dataclass(frozen=True, eq=False)
class TerrainGrid:
    """
    Immutable terrain: unit matrix, rasterized heightfield and feature footprints.

    Row index grows with world y, column index with world x; unit (r, c)
    covers [c * unit_size, (c + 1) * unit_size) x [r * unit_width, (r + 1) * unit_width).
    `obstacles` is the true collision geometry; `virtual_obstacles` is the
    planner/policy-facing copy that inflation enlarges.
    """
    units: Tuple[Tuple[TerrainUnitSpec, ...], ...]
    unit_size: float
    resolution: float
    heightfield: np.ndarray
    obstacles: Tuple[Footprint, ...]
    scenario: Scenario
    unit_width: float = 0.0
    virtual_obstacles: Optional[Tuple[Footprint, ...]] = None
    area_shape: Optional[Tuple[int, int]] = None
    units_per_track: Optional[int] = None
    gap_depth: float = 1.0
    seed: Optional[int] = None
    _bounds: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.unit_width <= 0:
            object.__setattr__(self, "unit_width", self.unit_size)
        if self.virtual_obstacles is None:
            object.__setattr__(self, "virtual_obstacles", self.obstacles)
        self.heightfield.setflags(write=False)
        bounds = np.array([f.bounds for f in self.obstacles], dtype=float).reshape(-1, 4)
        bounds.setflags(write=False)
        object.__setattr__(self, "_bounds", bounds)

    @property
    def rows(self) -> int:
        return len(self.units)

    @property
    def cols(self) -> int:
        return len(self.units[0]) if self.units else 0

    @property
    def size(self) -> Vec2:
        """World extent (x, y) in meters"""
        return (self.cols * self.unit_size, self.rows * self.unit_width)

    def unit(self, row: int, col: int) -> TerrainUnitSpec:
        return self.units[row][col]

    def unit_center(self, row: int, col: int) -> Vec2:
        return ((col + 0.5) * self.unit_size, (row + 0.5) * self.unit_width)

    def unit_at(self, x: float, y: float) -> Optional[Tuple[int, int]]:
        if not self.in_bounds(x, y):
            return None
        col = min(int(x // self.unit_size), self.cols - 1)
        row = min(int(y // self.unit_width), self.rows - 1)
        return (row, col)

    def in_bounds(self, x: float, y: float) -> bool:
        size_x, size_y = self.size
        return 0.0 <= x <= size_x and 0.0 <= y <= size_y

    def iter_units(self):
        for row in self.units:
            yield from row

    def kind_counts(self) -> Dict[UnitKind, int]:
        counts = {kind: 0 for kind in UnitKind}
        for unit in self.iter_units():
            counts[unit.kind] += 1
        return counts

    def height_at(self, x: float, y: float) -> float:
        """Closed-form terrain height from the feature footprints"""
        top = 0.0
        in_gap = False
        for footprint in self.footprints_near(x, y, x, y):
            if footprint.contains(x, y):
                if footprint.kind == FeatureKind.GAP:
                    in_gap = True
                else:
                    top = max(top, footprint.height)
        if top > 0.0:
            return top
        return -self.gap_depth if in_gap else 0.0

    def footprints_near(
        self,
        x_min: float,
        y_min: float,
        x_max: float,
        y_max: float,
        margin: float = 0.0
    ) -> List[Footprint]:
        """True footprints whose bounds come within margin of a query box"""
        if not self.obstacles:
            return []
        b = self._bounds
        mask = (
            (b[:, 0] - margin <= x_max) & (b[:, 2] + margin >= x_min)
            & (b[:, 1] - margin <= y_max) & (b[:, 3] + margin >= y_min)
        )
        return [self.obstacles[i] for i in np.flatnonzero(mask)]

    def track_units(self, track_row: int, track_col: int) -> List[TerrainUnitSpec]:
        """Units of one WP-Fixed track, in traversal order"""
        per_track = self.units_per_track or self.cols
        start = track_col * per_track
        return list(self.units[track_row][start:start + per_track])

    @property
    def track_count(self) -> int:
        if not self.units_per_track:
            return 0
        return self.rows * (self.cols // self.units_per_track)


@dataclass(frozen=True, eq=False)
class Scandots:
    """Terrain heights sampled around the robot in its base frame"""
    samples: np.ndarray
    pattern: np.ndarray

    def __post_init__(self):
        if len(self.samples) != len(self.pattern):
            raise ValueError("Scandot sample count must match the pattern size")
