"""Kinematic integration with capability-gated terrain transitions"""

import math
from dataclasses import replace
from typing import Optional, Set, Tuple

import numpy as np
from loguru import logger

from ..errors import DeadRobotError
from ..geometry import Vec2, rotate, wrap_angle
from ..terrain.models import FeatureKind, Footprint, TerrainGrid
from .models import Action, RobotCapabilities, RobotState, StepEvent, StepOutcome

CONTROL_DT = 0.02
# tolerance on capability comparisons and the nudge used when clipping positions
CAPABILITY_EPS = 1e-9
NUDGE = 1e-6


def _lerp(p0: Vec2, p1: Vec2, t: float) -> Vec2:
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def _offset(p: Vec2, direction: Vec2, amount: float) -> Vec2:
    return (p[0] + amount * direction[0], p[1] + amount * direction[1])


def _first_entry(
    grid: TerrainGrid,
    p0: Vec2,
    end: Vec2,
    caps: RobotCapabilities,
    skip: Set[int]
) -> Optional[Tuple[float, float, int, Footprint]]:
    """Earliest footprint the segment p0 -> end enters from outside"""
    x_lo, x_hi = min(p0[0], end[0]), max(p0[0], end[0])
    y_lo, y_hi = min(p0[1], end[1]), max(p0[1], end[1])
    best = None
    for fp in grid.footprints_near(x_lo, y_lo, x_hi, y_hi, margin=caps.body_radius):
        key = id(fp)
        if key in skip:
            continue
        if fp.kind.must_bypass:
            rect = fp.grown(caps.body_radius)
            if rect.contains_closed(*p0):
                if fp.contains_closed(*p0):
                    continue
                # already within the clearance band: only the true footprint counts
                rect = fp
        elif fp.contains_open(*p0):
            # already on or in it; a start on the border still enters
            continue
        else:
            rect = fp
        interval = rect.line_interval(p0, end)
        if interval is None:
            continue
        t_in, t_out = interval
        if t_in < 0.0 or t_in > 1.0:
            continue
        if best is None or t_in < best[0]:
            best = (t_in, t_out, key, fp)
    return best


def integrate(
    state: RobotState,
    action: Action,
    grid: TerrainGrid,
    caps: RobotCapabilities,
    dt: float = CONTROL_DT
) -> StepOutcome:
    """
    Explicit-Euler step with terrain gating along the swept segment.

    Transition rules, applied in order of entry along the segment:
    bypass-only footprints grown by body_radius -> Collision; hurdle taller
    than max_hurdle -> Collision, otherwise crossed; box step above
    max_climb -> blocked in front of it (non-fatal), otherwise climbed;
    gap whose chord along the motion direction exceeds max_gap, or entered
    below min_leap_speed -> Fell, otherwise leapt to its far edge. Leaving
    the terrain or standing in a trench also counts as Fell.

    Args:
        state: Current state, must be alive
        action: Body-frame velocity and yaw-rate command
        grid: Terrain with the true footprints
        caps: Capability limits
        dt: Step length (s)

    Returns:
        StepOutcome with the new state and the triggered event
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not state.alive:
        raise DeadRobotError("Cannot step a robot after a fatal event")

    vx, vy = action.vx, action.vy
    speed = math.hypot(vx, vy)
    if speed > caps.max_speed:
        scale = caps.max_speed / speed
        vx, vy, speed = vx * scale, vy * scale, caps.max_speed
    yaw_rate = max(-caps.max_yaw_rate, min(caps.max_yaw_rate, action.yaw_rate))

    v_world = rotate((vx, vy), state.yaw)
    p0 = state.position
    end = (p0[0] + v_world[0] * dt, p0[1] + v_world[1] * dt)
    new_yaw = wrap_angle(state.yaw + yaw_rate * dt)

    event = StepEvent.NONE
    blocked = False
    detail = None

    in_trench = any(
        fp.kind == FeatureKind.GAP and fp.contains_open(*p0)
        for fp in grid.footprints_near(p0[0], p0[1], p0[0], p0[1])
    )
    if in_trench:
        event, detail, end = StepEvent.FELL, "standing in a gap", p0

    seg_len = math.hypot(end[0] - p0[0], end[1] - p0[1])
    skip: Set[int] = set()
    while event == StepEvent.NONE and seg_len > 0.0:
        hit = _first_entry(grid, p0, end, caps, skip)
        if hit is None:
            break
        t_in, t_out, key, fp = hit
        direction = ((end[0] - p0[0]) / seg_len, (end[1] - p0[1]) / seg_len)
        entry = _lerp(p0, end, t_in)

        if fp.kind.must_bypass:
            event, end = StepEvent.COLLISION, entry
            detail = f"{fp.kind.value} at ({fp.center[0]:.2f}, {fp.center[1]:.2f})"
        elif fp.kind == FeatureKind.HURDLE:
            if fp.height > caps.max_hurdle + CAPABILITY_EPS:
                event, end = StepEvent.COLLISION, entry
                detail = f"hurdle {fp.height:.2f} m above limit {caps.max_hurdle:.2f} m"
            else:
                skip.add(key)
        elif fp.kind == FeatureKind.BOX:
            step = fp.height - state.height
            if step > caps.max_climb + CAPABILITY_EPS:
                back = max(0.0, t_in * seg_len - NUDGE)
                end = _offset(p0, direction, back)
                blocked = True
                detail = f"box step {step:.2f} m above limit {caps.max_climb:.2f} m"
                break
            skip.add(key)
        elif fp.kind == FeatureKind.GAP:
            chord = (t_out - t_in) * seg_len
            if chord > caps.max_gap + CAPABILITY_EPS:
                event, end = StepEvent.FELL, _offset(entry, direction, NUDGE)
                detail = f"gap chord {chord:.2f} m above limit {caps.max_gap:.2f} m"
            elif speed < caps.min_leap_speed - CAPABILITY_EPS:
                event, end = StepEvent.FELL, _offset(entry, direction, NUDGE)
                detail = f"entered gap at {speed:.2f} m/s without run-up"
            else:
                skip.add(key)
                if t_out >= 1.0:
                    end = _offset(_lerp(p0, end, t_out), direction, NUDGE)
                    seg_len = math.hypot(end[0] - p0[0], end[1] - p0[1])

    if event == StepEvent.NONE and not grid.in_bounds(*end):
        size_x, size_y = grid.size
        end = (min(max(end[0], 0.0), size_x), min(max(end[1], 0.0), size_y))
        event, detail = StepEvent.FELL, "left the terrain"

    alive = not event.fatal
    moving = alive and not blocked
    new_state = replace(
        state,
        position=end,
        yaw=new_yaw,
        height=grid.height_at(*end),
        v=v_world if moving else (0.0, 0.0),
        t=state.t + dt,
        alive=alive,
    )
    if event != StepEvent.NONE:
        logger.debug(f"t={new_state.t:.2f}s {event.value}: {detail}")
    return StepOutcome(state=new_state, event=event, blocked=blocked, detail=detail)


def joint_posture(state: RobotState, cfg, caps: Optional[RobotCapabilities] = None) -> np.ndarray:
    """
    Synthetic joint vector: q_default plus an offset growing with speed.

    The L1 deviation equals posture_gain * |v| / max_speed, spread evenly
    over the joints; a stationary robot holds q_default exactly.

    Args:
        state: Robot state (its planar speed is used)
        cfg: RewardConfig providing q_default and posture_gain
        caps: Capabilities providing max_speed

    Returns:
        Joint positions (radians)
    """
    q_default = np.asarray(cfg.q_default, dtype=float)
    speed = state.speed
    if cfg.posture_gain == 0.0 or speed == 0.0:
        return q_default.copy()
    max_speed = (caps or RobotCapabilities()).max_speed
    per_joint = cfg.posture_gain * (speed / max_speed) / q_default.size
    return q_default + per_joint
