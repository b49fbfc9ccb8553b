"""Fixed waypoint presetting for WP-Fixed tracks"""

from typing import List, Optional, Sequence

from loguru import logger

from ..geometry import Vec2
from ..terrain.models import FeatureKind, Footprint, Scenario, TerrainGrid, TerrainUnitSpec, UnitKind
from .models import Waypoint

# distance past a feature's far edge
FEATURE_OFFSET = 0.5
# half-width of the clear strip an obstacle-unit waypoint lane needs
LANE_CLEARANCE = 0.35
LANE_STEP = 0.05


def _unit_features(grid: TerrainGrid, unit: TerrainUnitSpec) -> List[Footprint]:
    index = (unit.row, unit.col)
    return [fp for fp in grid.footprints_near(*unit.bounds) if fp.unit == index]


def _clear_lane(unit: TerrainUnitSpec, footprints: Sequence[Footprint], x: float) -> Optional[float]:
    """Lateral position nearest the unit axis whose strip around x is free of footprints"""
    x0, y0, x1, y1 = unit.bounds
    cy = unit.center[1]
    candidates = []
    y = y0 + LANE_CLEARANCE
    while y <= y1 - LANE_CLEARANCE + 1e-9:
        candidates.append(y)
        y += LANE_STEP
    candidates.sort(key=lambda v: (abs(v - cy), v))
    for y in candidates:
        box = (x - LANE_CLEARANCE, y - LANE_CLEARANCE, x + LANE_CLEARANCE, y + LANE_CLEARANCE)
        if not any(fp.overlaps(*box) for fp in footprints):
            return y
    return None


def _place(grid: TerrainGrid, unit: TerrainUnitSpec) -> Vec2:
    cx, cy = unit.center
    x_max = unit.bounds[2]
    if unit.kind in (UnitKind.FLAT, UnitKind.BOX):
        return (cx, cy)

    features = _unit_features(grid, unit)
    if unit.kind == UnitKind.OBSTACLE:
        x = min(cx + FEATURE_OFFSET, x_max - 1e-6)
        lane = _clear_lane(unit, features, x)
        if lane is None:
            logger.warning(f"No clear lane in obstacle unit ({unit.row}, {unit.col}); using its axis")
            lane = cy
        return (x, lane)

    kind = FeatureKind.GAP if unit.kind == UnitKind.GAP else FeatureKind.HURDLE
    far_edges = [fp.x_max for fp in features if fp.kind == kind]
    far = max(far_edges) if far_edges else cx
    return (min(far + FEATURE_OFFSET, x_max - 1e-6), cy)


def preset_fixed_waypoints(grid: TerrainGrid) -> List[List[Waypoint]]:
    """
    Preset one waypoint per unit for every WP-Fixed track.

    Flat and Box units get their center (a box waypoint sits on the box top);
    Hurdle and Gap units get a point FEATURE_OFFSET past the feature's far
    edge on the track axis; Obstacle units get a point past the unit center
    on the clear lane nearest the axis.

    Args:
        grid: WP-Fixed terrain

    Returns:
        Waypoint lists, one per track in row-major track order
    """
    if grid.scenario != Scenario.WP_FIXED:
        raise ValueError(f"Preset waypoints need a WP-Fixed grid, got {grid.scenario.value}")

    per_track = grid.units_per_track or grid.cols
    tracks: List[List[Waypoint]] = []
    for row in range(grid.rows):
        for track_col in range(grid.cols // per_track):
            waypoints = []
            for k, unit in enumerate(grid.track_units(row, track_col)):
                position = _place(grid, unit)
                unit_index = (unit.row, unit.col) if position == unit.center else None
                waypoints.append(Waypoint(position=position, id=k, unit_index=unit_index))
            tracks.append(waypoints)

    logger.debug(f"Preset {sum(len(t) for t in tracks)} waypoints over {len(tracks)} tracks")
    return tracks
