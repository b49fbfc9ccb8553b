"""Stay-then-advance waypoint progression and base-frame commands"""

import math
from dataclasses import replace
from typing import List, Optional, Protocol, Sequence, Tuple

import numpy as np
from loguru import logger

from ..geometry import Pose, Vec2, distance, norm, rotate, wrap_angle
from ..terrain.models import TerrainGrid
from .models import (
    DEFAULT_REACH_RADIUS,
    DEFAULT_STAY_DURATION,
    ProgressState,
    Waypoint,
    WaypointCommand,
)
from .sampler import sample_random_waypoint

# tolerance on the dwell comparison so 100 steps of 0.02 s count as 2 s
DWELL_EPS = 1e-9


def to_command(waypoint: Waypoint, pose: Pose) -> WaypointCommand:
    """
    Express a world-frame waypoint in the robot base frame.

    Args:
        waypoint: Target waypoint
        pose: Robot pose

    Returns:
        WaypointCommand with w_rel = R(-yaw) (w - p)
    """
    delta = (waypoint.position[0] - pose.x, waypoint.position[1] - pose.y)
    w_rel = rotate(delta, -pose.yaw)
    dist = norm(w_rel)
    bearing = wrap_angle(math.atan2(w_rel[1], w_rel[0])) if dist > 0.0 else 0.0
    return WaypointCommand(w_rel=w_rel, distance=dist, bearing=bearing)


class WaypointSource(Protocol):
    """Provides the waypoint with a given sequence number, or None when exhausted"""

    def next_waypoint(self, pose: Pose, index: int) -> Optional[Waypoint]:
        ...


class SequenceSource:
    """Fixed waypoint list, as produced by presetting or a planner"""

    def __init__(self, waypoints: Sequence[Waypoint]):
        self.waypoints: List[Waypoint] = list(waypoints)

    def next_waypoint(self, pose: Pose, index: int) -> Optional[Waypoint]:
        if 0 <= index < len(self.waypoints):
            return self.waypoints[index]
        return None


class RandomWaypointSource:
    """Dynamic WP-Random candidates sampled from the current pose"""

    def __init__(
        self,
        grid: TerrainGrid,
        rng: np.random.Generator,
        max_distance: Optional[float] = None,
        max_bearing: float = math.pi / 2,
        min_distance: float = DEFAULT_REACH_RADIUS,
        limit: Optional[int] = None
    ):
        self.grid = grid
        self.rng = rng
        self.max_distance = max_distance
        self.max_bearing = max_bearing
        self.min_distance = min_distance
        self.limit = limit

    def next_waypoint(self, pose: Pose, index: int) -> Optional[Waypoint]:
        if self.limit is not None and index >= self.limit:
            return None
        return sample_random_waypoint(
            self.grid,
            pose,
            max_distance=self.max_distance,
            max_bearing=self.max_bearing,
            rng=self.rng,
            min_distance=self.min_distance,
            waypoint_id=index,
        )


class RaySource:
    """Evenly spaced waypoints streaming outward along a fixed ray"""

    def __init__(self, origin: Vec2, yaw: float, spacing: float = 3.0, count: int = 3):
        if spacing <= 0 or count < 1:
            raise ValueError("RaySource needs spacing > 0 and count >= 1")
        self.origin = origin
        self.yaw = yaw
        self.spacing = spacing
        self.count = count

    def next_waypoint(self, pose: Pose, index: int) -> Optional[Waypoint]:
        if not 0 <= index < self.count:
            return None
        reach = (index + 1) * self.spacing
        position = (
            self.origin[0] + reach * math.cos(self.yaw),
            self.origin[1] + reach * math.sin(self.yaw),
        )
        return Waypoint(position=position, id=index)


def start_progress(
    source: WaypointSource,
    pose: Pose,
    reach_radius: float = DEFAULT_REACH_RADIUS,
    stay_duration: float = DEFAULT_STAY_DURATION
) -> ProgressState:
    """Initial progress state with the source's first waypoint active"""
    first = source.next_waypoint(pose, 0)
    return ProgressState(
        active=first,
        reach_radius=reach_radius,
        stay_duration=stay_duration,
        terminal=first is None,
    )


def update_progress(
    state: ProgressState,
    pose: Pose,
    dt: float,
    next_source: WaypointSource
) -> Tuple[ProgressState, Optional[WaypointCommand]]:
    """
    Advance the dwell timer and switch waypoints after a full stay.

    Inside reach_radius (strict) the dwell timer grows by dt, outside it
    resets. Once it reaches stay_duration, reached_count grows by one and
    the next waypoint becomes active; without a next waypoint the state
    turns terminal. Passing through a waypoint without dwelling does not
    advance.

    Args:
        state: Current progress
        pose: Robot pose after the step
        dt: Step length (s)
        next_source: Waypoint provider

    Returns:
        (new state, command for the active waypoint or None when terminal)
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    clock = state.clock + dt
    if state.terminal or state.active is None:
        return replace(state, clock=clock), None

    inside = distance(pose.position, state.active.position) < state.reach_radius
    dwell = state.time_at_waypoint + dt if inside else 0.0
    if dwell < state.stay_duration - DWELL_EPS:
        new_state = replace(state, clock=clock, time_at_waypoint=dwell)
        return new_state, to_command(state.active, pose)

    reached = state.reached_count + 1
    upcoming = next_source.next_waypoint(pose, state.active_index + 1)
    if upcoming is None:
        logger.debug(f"Final waypoint {state.active_index} held at t={clock:.2f}s")
        return replace(
            state, clock=clock, time_at_waypoint=0.0, reached_count=reached, terminal=True
        ), None

    logger.debug(f"Waypoint {state.active_index} reached at t={clock:.2f}s, advancing")
    new_state = replace(
        state,
        active=upcoming,
        active_index=state.active_index + 1,
        time_at_waypoint=0.0,
        reached_count=reached,
        clock=clock,
    )
    return new_state, to_command(upcoming, pose)
