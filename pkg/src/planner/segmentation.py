"""Uniform arc-length segmentation of planned paths into waypoints"""

import math
from typing import List

import numpy as np

from ..waypoints.models import Waypoint
from .grid_search import PlannedPath

DEFAULT_MIN_GAP = 0.5
DEFAULT_MAX_GAP = 3.0


def segment_path(
    path: PlannedPath,
    min_gap: float = DEFAULT_MIN_GAP,
    max_gap: float = DEFAULT_MAX_GAP
) -> List[Waypoint]:
    """
    Split a path into equally spaced waypoints ending at the path end.

    The arc length L is divided into ceil(L / max_gap) equal intervals;
    if that spacing would fall under min_gap, floor(L / min_gap) intervals
    are used instead. Paths shorter than min_gap yield one waypoint at
    the end.

    Args:
        path: Planned path (its world_points polyline is used)
        min_gap: Smallest spacing (m)
        max_gap: Largest spacing (m)

    Returns:
        Waypoints at arc lengths k * L / n, k = 1..n
    """
    if not 0 < min_gap <= max_gap:
        raise ValueError(f"Need 0 < min_gap <= max_gap, got {min_gap}, {max_gap}")
    if not path.world_points:
        raise ValueError("Cannot segment an empty path")

    points = np.asarray(path.world_points, dtype=float)
    end = (float(points[-1, 0]), float(points[-1, 1]))
    steps = np.linalg.norm(np.diff(points, axis=0), axis=1)
    arc = np.concatenate([[0.0], np.cumsum(steps)])
    length = float(arc[-1])
    if length < min_gap:
        return [Waypoint(position=end, id=0)]

    n = max(1, math.ceil(length / max_gap - 1e-9))
    if length / n < min_gap:
        n = max(1, math.floor(length / min_gap + 1e-9))

    waypoints = []
    for k in range(1, n + 1):
        if k == n:
            position = end
        else:
            s = k * length / n
            position = (float(np.interp(s, arc, points[:, 0])), float(np.interp(s, arc, points[:, 1])))
        waypoints.append(Waypoint(position=position, id=k - 1))
    return waypoints
