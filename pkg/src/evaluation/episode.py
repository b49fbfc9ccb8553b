"""Closed-loop episode runner: waypoint progression, controller, integrator, rewards"""

import math
from dataclasses import replace
from typing import Optional

import numpy as np
from loguru import logger

from ..errors import NoCandidate
from ..geometry import Pose, distance, rotate
from ..reward.compose import compose
from ..reward.models import RewardInputs
from ..robot.controller import Policy, ScriptedPolicy
from ..robot.integrator import integrate, joint_posture
from ..robot.models import RobotState, StepEvent
from ..waypoints.models import ProgressState, WaypointCommand
from ..waypoints.progress import (
    RandomWaypointSource,
    RaySource,
    SequenceSource,
    WaypointSource,
    start_progress,
    to_command,
    update_progress,
)
from .models import EpisodeEvent, EpisodeLog, Outcome, TaskSpec, TrajectorySample

SUCCESS_EVENT = "success"
REINIT_EVENT = "reinit"


def make_source(spec: TaskSpec, robot: int) -> WaypointSource:
    """Waypoint provider for one robot of a task"""
    start = spec.starts[robot]
    if spec.waypoints is not None:
        return SequenceSource(spec.waypoints)
    if spec.ray_spacing is not None:
        return RaySource(start.position, start.yaw, spec.ray_spacing, spec.ray_count)
    if spec.random_waypoints:
        rng = np.random.default_rng([spec.seed, robot])
        return RandomWaypointSource(spec.arena, rng, min_distance=spec.reach_radius)
    raise ValueError(f"Task {spec.kind.value} has no waypoint provider")


def _initial_state(spec: TaskSpec, start: Pose, t: float) -> RobotState:
    state = RobotState(
        position=start.position,
        yaw=start.yaw,
        height=spec.arena.height_at(*start.position),
        t=t,
    )
    return replace(state, q=joint_posture(state, spec.reward, spec.capabilities))


def _sample(state: RobotState, event: str = "") -> TrajectorySample:
    return TrajectorySample(
        t=state.t, x=state.position[0], y=state.position[1], yaw=state.yaw,
        vx=state.v[0], vy=state.v[1], event=event,
    )


def _reached_goal(spec: TaskSpec, state: RobotState, start: Pose, progress: ProgressState) -> bool:
    if spec.success_x is not None and state.position[0] > spec.success_x:
        return True
    if spec.success_distance is not None and distance(state.position, start.position) > spec.success_distance:
        return True
    return spec.success_on_terminal and progress.terminal


def _reward_inputs(state: RobotState, cmd: WaypointCommand, progress: ProgressState) -> RewardInputs:
    return RewardInputs(
        q=state.q,
        w_rel=cmd.w_rel,
        v=rotate(state.v, -state.yaw),
        yaw=state.yaw,
        target_bearing=state.yaw + cmd.bearing,
        n_p=progress.reached_count,
        t=state.t,
    )


def _mark_survival(log: EpisodeLog, time_limit: float) -> None:
    """Record a survival success so it also shows in the stored trajectory"""
    log.outcome = Outcome.SUCCESS
    log.success_time = time_limit
    log.events.append(EpisodeEvent(time_limit, SUCCESS_EVENT, "survived"))
    last = log.samples[-1]
    marked = last._replace(t=time_limit, event=SUCCESS_EVENT)
    if last.event or not math.isclose(last.t, time_limit, abs_tol=1e-9):
        log.samples.append(marked)
    else:
        log.samples[-1] = marked


def run_episode(spec: TaskSpec, robot: int, policy: Optional[Policy] = None) -> EpisodeLog:
    """
    Run one robot through a task.

    The trajectory is sampled at the control rate, starting with the start
    pose. After a fatal event the failure sample is logged; tasks that
    reinitialize then log a second sample at the start pose and restart the
    waypoint sequence. Robots that reach the goal either stop the episode or
    stand still until the time limit, depending on the task.

    Args:
        spec: Task specification
        robot: Robot index into spec.starts
        policy: Controller, scripted by default

    Returns:
        EpisodeLog
    """
    start = spec.starts[robot]
    policy = policy or ScriptedPolicy(spec.capabilities, spec.gains)
    grid = spec.arena
    log = EpisodeLog(robot=robot, start=start.position, time_limit=spec.time_limit)

    source = make_source(spec, robot)
    state = _initial_state(spec, start, 0.0)
    progress = start_progress(source, start, spec.reach_radius, spec.stay_duration)
    if progress.active is not None:
        log.waypoints_used.append(progress.active)
    cmd = to_command(progress.active, start) if progress.active is not None else None
    log.samples.append(_sample(state))

    frozen = False
    had_failure = False
    stalled = False
    steps = int(round(spec.time_limit / spec.dt))
    for step in range(1, steps + 1):
        t = step * spec.dt
        if frozen:
            state = replace(state, t=t, v=(0.0, 0.0))
            log.samples.append(_sample(state))
            continue
        if cmd is None:
            break

        action = policy.act(state, cmd, spec.dt)
        outcome = integrate(state, action, grid, spec.capabilities, spec.dt)
        state = replace(outcome.state, t=t)
        state = replace(state, q=joint_posture(state, spec.reward, spec.capabilities))

        if outcome.event.fatal:
            had_failure = True
            log.events.append(EpisodeEvent(t, outcome.event.value, outcome.detail or ""))
            log.samples.append(_sample(state, outcome.event.value))
            if not spec.reinit_on_failure:
                log.outcome = Outcome.FAILED
                logger.debug(f"Robot {robot}: {outcome.event.value} at t={t:.2f}s, episode over")
                break
            state = _initial_state(spec, start, t)
            progress = start_progress(source, start, spec.reach_radius, spec.stay_duration)
            cmd = to_command(progress.active, start) if progress.active is not None else None
            log.events.append(EpisodeEvent(t, REINIT_EVENT))
            log.samples.append(_sample(state, REINIT_EVENT))
            continue

        previous = progress.active_index
        try:
            progress, cmd = update_progress(progress, state.pose, spec.dt, source)
        except NoCandidate as e:
            log.events.append(EpisodeEvent(t, "no_candidate", str(e)))
            log.samples.append(_sample(state, "no_candidate"))
            logger.warning(f"Robot {robot}: no waypoint candidate at t={t:.2f}s, episode stopped: {e}")
            stalled = True
            break
        if progress.active_index != previous and progress.active is not None:
            log.waypoints_used.append(progress.active)

        if progress.active is not None:
            current = to_command(progress.active, state.pose)
            log.rewards.append(compose(_reward_inputs(state, current, progress), spec.reward, spec.phase))

        if _reached_goal(spec, state, start, progress):
            log.success_time = t
            log.outcome = Outcome.SUCCESS
            label = StepEvent.REACHED_TERMINAL.value if progress.terminal else SUCCESS_EVENT
            log.events.append(EpisodeEvent(t, SUCCESS_EVENT, label))
            log.samples.append(_sample(replace(state, v=(0.0, 0.0)), SUCCESS_EVENT))
            if spec.stop_on_success:
                break
            frozen = True
            continue

        log.samples.append(_sample(state))

    log.reached_count = progress.reached_count
    if log.outcome != Outcome.SUCCESS:
        if spec.success_on_survival and not (had_failure or stalled) and log.outcome != Outcome.FAILED:
            _mark_survival(log, spec.time_limit)
        elif had_failure:
            log.outcome = Outcome.FAILED
    logger.debug(
        f"Robot {robot}: {log.outcome.value}, max distance {log.max_distance():.2f} m, "
        f"{len(log.samples)} samples"
    )
    return log


def safe_run_episode(spec: TaskSpec, robot: int, policy: Optional[Policy] = None) -> EpisodeLog:
    """run_episode that records unexpected exceptions on the log instead of raising"""
    try:
        return run_episode(spec, robot, policy)
    except Exception as e:
        logger.error(f"Robot {robot} hit an internal error: {e}")
        log = EpisodeLog(
            robot=robot,
            start=spec.starts[robot].position,
            time_limit=spec.time_limit,
            outcome=Outcome.FAILED,
            internal_error=f"{type(e).__name__}: {e}",
        )
        return log


def heading_to(start: Pose, target) -> float:
    """Yaw facing a target point from a pose's position"""
    return math.atan2(target[1] - start.y, target[0] - start.x)
