"""Scripted waypoint-tracking controller standing in for the learned policy"""

import math
from typing import Protocol

from ..waypoints.models import WaypointCommand
from .models import Action, ControllerGains, RobotCapabilities, RobotState

AT_GOAL_DISTANCE = 1e-9


def controller_step(
    state: RobotState,
    cmd: WaypointCommand,
    caps: RobotCapabilities,
    dt: float,
    gains: ControllerGains = ControllerGains()
) -> Action:
    """
    Turn toward the waypoint and walk forward when roughly facing it.

    yaw_rate = clamp(k * bearing, +-max_yaw_rate); forward speed is
    max_speed * max(0, cos(bearing)), scaled by distance / slowdown_radius
    inside slowdown_radius; zero action at the waypoint.

    Args:
        state: Current robot state
        cmd: Active waypoint command
        caps: Speed and yaw-rate limits
        dt: Control period (s)
        gains: Controller gains

    Returns:
        Body-frame Action
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if cmd.distance < AT_GOAL_DISTANCE:
        return Action()

    yaw_rate = max(-caps.max_yaw_rate, min(caps.max_yaw_rate, gains.yaw_gain * cmd.bearing))
    speed = caps.max_speed * max(0.0, math.cos(cmd.bearing))
    if cmd.distance < gains.slowdown_radius:
        speed *= cmd.distance / gains.slowdown_radius
    return Action(vx=speed, vy=0.0, yaw_rate=yaw_rate)


class Policy(Protocol):
    """Anything that maps (state, command) to an action"""

    def act(self, state: RobotState, cmd: WaypointCommand, dt: float) -> Action:
        ...


class ScriptedPolicy:
    """Policy wrapper around controller_step"""

    def __init__(self, caps: RobotCapabilities, gains: ControllerGains = ControllerGains()):
        self.caps = caps
        self.gains = gains

    def act(self, state: RobotState, cmd: WaypointCommand, dt: float) -> Action:
        return controller_step(state, cmd, self.caps, dt, self.gains)
