"""Waypoint semantics: presetting, dynamic sampling, progression and commands"""

from .models import (
    DEFAULT_REACH_RADIUS,
    DEFAULT_STAY_DURATION,
    ProgressState,
    Waypoint,
    WaypointCommand,
)
from .preset import preset_fixed_waypoints
from .sampler import SAMPLE_BUDGET, is_accessible, sample_random_waypoint
from .progress import (
    RandomWaypointSource,
    RaySource,
    SequenceSource,
    WaypointSource,
    start_progress,
    to_command,
    update_progress,
)
from .io import load_waypoints, save_waypoints

__all__ = [
    "DEFAULT_REACH_RADIUS",
    "DEFAULT_STAY_DURATION",
    "ProgressState",
    "Waypoint",
    "WaypointCommand",
    "preset_fixed_waypoints",
    "SAMPLE_BUDGET",
    "is_accessible",
    "sample_random_waypoint",
    "RandomWaypointSource",
    "RaySource",
    "SequenceSource",
    "WaypointSource",
    "start_progress",
    "to_command",
    "update_progress",
    "load_waypoints",
    "save_waypoints",
]
