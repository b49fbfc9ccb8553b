"""Dynamic waypoint candidates for the WP-Random scenario"""

import math
from typing import Optional

import numpy as np
from loguru import logger

from ..errors import NoCandidate
from ..geometry import Pose, Vec2
from ..terrain.models import FeatureKind, TerrainGrid
from .models import DEFAULT_REACH_RADIUS, Waypoint

SAMPLE_BUDGET = 256


def is_accessible(grid: TerrainGrid, origin: Vec2, point: Vec2) -> bool:
    """
    Per-waypoint accessibility check.

    The point must lie on the terrain, outside every (possibly inflated)
    bypass-only footprint and outside every gap trench, and the straight
    line from origin must not pass through a wall or tall obstacle.
    """
    if not grid.in_bounds(*point):
        return False
    x_lo, x_hi = min(origin[0], point[0]), max(origin[0], point[0])
    y_lo, y_hi = min(origin[1], point[1]), max(origin[1], point[1])

    for fp in grid.virtual_obstacles:
        if fp.kind.must_bypass and fp.contains_closed(*point):
            return False
    for fp in grid.footprints_near(x_lo, y_lo, x_hi, y_hi):
        if fp.kind == FeatureKind.GAP and fp.contains_closed(*point):
            return False
        if fp.kind.must_bypass:
            interval = fp.line_interval(origin, point)
            if interval is not None and interval[0] <= 1.0 and interval[1] >= 0.0:
                return False
    return True


def sample_random_waypoint(
    grid: TerrainGrid,
    pose: Pose,
    max_distance: Optional[float] = None,
    max_bearing: float = math.pi / 2,
    rng: Optional[np.random.Generator] = None,
    min_distance: float = DEFAULT_REACH_RADIUS,
    waypoint_id: int = 0,
    budget: int = SAMPLE_BUDGET
) -> Waypoint:
    """
    Rejection-sample a waypoint inside the distance/orientation cone ahead of the robot.

    Candidates are drawn uniformly over the annular sector
    min_distance <= r <= max_distance, |bearing - yaw| <= max_bearing.

    Args:
        grid: Terrain (virtual obstacles used for accessibility)
        pose: Robot pose
        max_distance: Distance threshold, defaults to the unit size
        max_bearing: Orientation threshold, at most pi / 2
        rng: Random generator
        min_distance: Lower distance bound, defaults to the reach radius
        waypoint_id: Sequence number for the returned waypoint
        budget: Draws before giving up

    Returns:
        Accessible Waypoint

    Raises:
        NoCandidate: If no draw within the budget is accessible
    """
    if not 0.0 <= max_bearing <= math.pi / 2:
        raise ValueError(f"max_bearing must lie in [0, pi/2], got {max_bearing}")
    max_distance = grid.unit_size if max_distance is None else max_distance
    if not 0.0 <= min_distance <= max_distance:
        raise ValueError(f"Need 0 <= min_distance <= max_distance, got {min_distance}, {max_distance}")
    rng = rng if rng is not None else np.random.default_rng()

    origin = pose.position
    r_min2, r_max2 = min_distance ** 2, max_distance ** 2
    for _ in range(budget):
        radius = math.sqrt(r_min2 + rng.uniform() * (r_max2 - r_min2))
        heading = pose.yaw + rng.uniform(-max_bearing, max_bearing)
        point = (origin[0] + radius * math.cos(heading), origin[1] + radius * math.sin(heading))
        if is_accessible(grid, origin, point):
            return Waypoint(position=point, id=waypoint_id)

    logger.warning(
        f"No accessible waypoint from ({origin[0]:.2f}, {origin[1]:.2f}) "
        f"after {budget} draws"
    )
    raise NoCandidate(
        f"No accessible waypoint within {max_distance:.2f} m and "
        f"{math.degrees(max_bearing):.0f} deg of pose {tuple(round(v, 3) for v in pose)}"
    )
