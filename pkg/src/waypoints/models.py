"""Waypoint types: world-frame targets, base-frame commands and progress state"""

from dataclasses import dataclass
from typing import Optional, Tuple

from ..geometry import Vec2

DEFAULT_REACH_RADIUS = 0.4
DEFAULT_STAY_DURATION = 2.0


@dataclass(frozen=True)
class Waypoint:
    """World-frame 2D target; unit_index is set when it marks a unit center"""
    position: Vec2
    id: int = 0
    unit_index: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class WaypointCommand:
    """Active waypoint in the base frame (w_rel) with its polar form"""
    w_rel: Vec2
    distance: float
    bearing: float


@dataclass(frozen=True)
class ProgressState:
    """
    Stay-then-advance bookkeeping for one episode.

    reached_count is n_p of the reach reward; time_at_waypoint accumulates
    while the robot is within reach_radius of the active waypoint.
    """
    active: Optional[Waypoint]
    active_index: int = 0
    time_at_waypoint: float = 0.0
    reached_count: int = 0
    reach_radius: float = DEFAULT_REACH_RADIUS
    stay_duration: float = DEFAULT_STAY_DURATION
    clock: float = 0.0
    terminal: bool = False
