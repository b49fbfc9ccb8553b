"""Evaluation tasks: single-traverse, omni-traverse, hierarchical navigation, waypoint tracking"""

import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from tqdm import tqdm

from ..geometry import Pose, Vec2, distance
from ..reward.models import Phase, RewardConfig
from ..robot.controller import Policy
from ..robot.models import ControllerGains, RobotCapabilities
from ..terrain.generator import DEFAULT_UNIT_SIZE, generate_arena, generate_wp_fixed
from ..terrain.inflation import inflate_obstacles
from ..terrain.models import Scenario, TerrainGrid, UnitKind
from ..waypoints.models import DEFAULT_REACH_RADIUS, Waypoint
from ..waypoints.preset import preset_fixed_waypoints
from .episode import SUCCESS_EVENT, heading_to, run_episode, safe_run_episode
from .heatmap import DEFAULT_CELL, accumulate_heatmap
from .metrics import compute_metrics
from .models import EpisodeEvent, EpisodeLog, Heatmap, Metrics, Outcome, TaskKind, TaskSpec, TrajectorySample

DEFAULT_ROBOTS = 18
SINGLE_TIME_LIMIT = 30.0
OMNI_TIME_LIMIT = 16.0
OMNI_SUCCESS_DISTANCE = 8.5
OMNI_RAY_SPACING = 3.0
HIERARCHICAL_TIME_LIMIT = 120.0
TRACKING_TIME_LIMIT = 20.0
START_INSET = 0.3
START_JITTER = 0.3


def run_robots(
    spec: TaskSpec,
    parallel: int = 1,
    show_progress: bool = True,
    policy: Optional[Policy] = None
) -> List[EpisodeLog]:
    """
    Run every robot of a task, optionally across worker processes.

    The policy (scripted by default) must be picklable when parallel > 1.

    Logs come back in robot-index order whatever the completion order.
    """
    indices = list(range(spec.robots))
    desc = f"{spec.kind.value} {spec.variant}".strip()
    if parallel > 1 and spec.robots > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            futures = [pool.submit(safe_run_episode, spec, i, policy) for i in indices]
            logs = [f.result() for f in tqdm(futures, desc=desc, disable=not show_progress)]
    else:
        logs = [safe_run_episode(spec, i, policy) for i in tqdm(indices, desc=desc, disable=not show_progress)]
    return sorted(logs, key=lambda log: log.robot)


def single_traverse_spec(
    kind: UnitKind = UnitKind.FLAT,
    difficulty: float = 0.5,
    with_obstacles: bool = False,
    robots: int = DEFAULT_ROBOTS,
    time_limit: float = SINGLE_TIME_LIMIT,
    seed: int = 0,
    unit_size: float = DEFAULT_UNIT_SIZE,
    track_width: Optional[float] = None,
    capabilities: Optional[RobotCapabilities] = None,
    gains: Optional[ControllerGains] = None,
    reward: Optional[RewardConfig] = None,
    dt: float = 0.02
) -> TaskSpec:
    """
    Single-traverse arena: one WP-Fixed test track followed by a flat run-out track.

    Robots start near the track entrance facing +x with a small seeded
    lateral and heading jitter; success is crossing the far edge of the
    test track. with_obstacles swaps the test track for tall obstacles.
    """
    test_kind = UnitKind.OBSTACLE if with_obstacles else UnitKind(kind)
    arena = generate_wp_fixed(
        rows=1, cols=2, kind_assignment=[test_kind, UnitKind.FLAT],
        difficulty=difficulty, seed=seed, unit_size=unit_size, track_width=track_width,
    )
    tracks = preset_fixed_waypoints(arena)
    waypoints = [wp for track in tracks for wp in track]
    waypoints = [Waypoint(position=wp.position, id=k, unit_index=wp.unit_index) for k, wp in enumerate(waypoints)]

    rng = np.random.default_rng(seed)
    axis = 0.5 * arena.unit_width
    starts = [
        Pose(START_INSET, axis + rng.uniform(-START_JITTER, START_JITTER), rng.uniform(-0.2, 0.2))
        for _ in range(robots)
    ]
    per_track = arena.units_per_track or arena.cols
    return TaskSpec(
        kind=TaskKind.SINGLE_TRAVERSE,
        arena=arena,
        starts=starts,
        time_limit=time_limit,
        variant=f"{test_kind.value}, {'with' if with_obstacles else 'w/o'} obst.",
        waypoints=waypoints,
        success_x=per_track * arena.unit_size,
        capabilities=capabilities or RobotCapabilities(),
        gains=gains or ControllerGains(),
        reward=reward or RewardConfig(),
        dt=dt,
        seed=seed,
    )


def omni_traverse_spec(
    arena: Optional[TerrainGrid] = None,
    robots: int = DEFAULT_ROBOTS,
    time_limit: float = OMNI_TIME_LIMIT,
    success_distance: float = OMNI_SUCCESS_DISTANCE,
    ray_spacing: float = OMNI_RAY_SPACING,
    with_obstacles: bool = False,
    seed: int = 0,
    capabilities: Optional[RobotCapabilities] = None,
    gains: Optional[ControllerGains] = None,
    reward: Optional[RewardConfig] = None,
    dt: float = 0.02
) -> TaskSpec:
    """
    Omni-traverse: robots at the arena center with evenly spaced fixed yaws.

    Each robot follows waypoints every ray_spacing meters along its own
    heading; success is ending up more than success_distance from the center.
    """
    arena = arena or generate_arena(with_obstacles=with_obstacles, seed=seed)
    size_x, size_y = arena.size
    center = (0.5 * size_x, 0.5 * size_y)
    yaws = [2.0 * math.pi * k / robots for k in range(robots)]
    count = max(1, math.ceil(success_distance / ray_spacing))
    return TaskSpec(
        kind=TaskKind.OMNI_TRAVERSE,
        arena=arena,
        starts=[Pose(center[0], center[1], yaw) for yaw in yaws],
        time_limit=time_limit,
        variant=f"{size_x:g}x{size_y:g} m, {'with' if with_obstacles else 'w/o'} obst.",
        ray_spacing=ray_spacing,
        ray_count=count,
        success_distance=success_distance,
        capabilities=capabilities or RobotCapabilities(),
        gains=gains or ControllerGains(),
        reward=reward or RewardConfig(),
        dt=dt,
        seed=seed,
    )


def run_single_traverse(
    spec: TaskSpec,
    parallel: int = 1,
    policy: Optional[Policy] = None
) -> Tuple[List[EpisodeLog], Metrics]:
    """
    Run the single-traverse task.

    Args:
        spec: Task from single_traverse_spec or an equivalent WP-Fixed arena
        parallel: Worker processes
        policy: Low-level controller, scripted by default

    Returns:
        (per-robot logs, metrics)
    """
    if spec.arena.scenario != Scenario.WP_FIXED or not spec.waypoints or spec.success_x is None:
        raise ValueError("Single traverse needs a WP-Fixed arena with preset waypoints and a finish line")
    logger.info(f"Single traverse: {spec.robots} robots, {spec.time_limit:.0f} s, {spec.variant}")
    logs = run_robots(spec, parallel, policy=policy)
    metrics = compute_metrics(logs, spec.time_limit)
    logger.info(f"Single traverse SR={metrics.sr:.2f} ATD={metrics.atd:.2f} AST={metrics.ast_text}")
    return logs, metrics


def run_omni_traverse(
    spec: TaskSpec,
    parallel: int = 1,
    heatmap_cell: float = DEFAULT_CELL,
    policy: Optional[Policy] = None
) -> Tuple[List[EpisodeLog], Metrics, Heatmap]:
    """
    Run the omni-traverse task and accumulate its visit heatmap.

    Returns:
        (per-robot logs, metrics, heatmap over the arena)
    """
    if spec.success_distance is None or spec.ray_spacing is None:
        raise ValueError("Omni traverse needs a success distance and outward waypoint rays")
    logger.info(f"Omni traverse: {spec.robots} robots, {spec.time_limit:.0f} s, {spec.variant}")
    logs = run_robots(spec, parallel, policy=policy)
    metrics = compute_metrics(logs, spec.time_limit)
    heatmap = accumulate_heatmap(logs, heatmap_cell, extent=spec.arena.size)
    logger.info(f"Omni traverse SR={metrics.sr:.2f} ATD={metrics.atd:.2f} AST={metrics.ast_text}")
    return logs, metrics, heatmap


def _already_there(start: Vec2, waypoint: Waypoint, time_limit: float) -> EpisodeLog:
    sample = TrajectorySample(t=0.0, x=start[0], y=start[1], yaw=0.0, vx=0.0, vy=0.0, event=SUCCESS_EVENT)
    return EpisodeLog(
        robot=0,
        start=start,
        time_limit=time_limit,
        samples=[sample],
        events=[EpisodeEvent(0.0, SUCCESS_EVENT, "start is goal")],
        waypoints_used=[waypoint],
        outcome=Outcome.SUCCESS,
        success_time=0.0,
        reached_count=1,
    )


def run_hierarchical(
    grid: TerrainGrid,
    planner,
    start: Vec2,
    goal: Vec2,
    policy: Optional[Policy] = None,
    seed: int = 0,
    capabilities: Optional[RobotCapabilities] = None,
    gains: Optional[ControllerGains] = None,
    reward: Optional[RewardConfig] = None,
    time_limit: float = HIERARCHICAL_TIME_LIMIT,
    inflation_margin: float = 0.0,
    audit_dir: Optional[Union[str, Path]] = None,
    dt: float = 0.02
) -> EpisodeLog:
    """
    Plan waypoints from start to goal and track them with the low-level controller.

    The planner sees the inflated virtual obstacles; the robot moves on the
    true terrain. The episode ends when the last waypoint has been held,
    on a fatal event, or at the time limit. A single waypoint already within
    reach of the start succeeds immediately.

    Args:
        grid: Terrain
        planner: BasePlanner instance
        start: Start position (m)
        goal: Goal position (m)
        policy: Low-level controller, scripted by default
        seed: Seed recorded on the task
        capabilities: Robot capabilities
        gains: Controller gains
        reward: Reward configuration for the per-step log
        time_limit: Episode time limit (s)
        inflation_margin: Growth of bypass-only obstacles for planning (m)
        audit_dir: Where planner artifacts are written
        dt: Control period (s)

    Returns:
        EpisodeLog of the single robot

    Raises:
        PlanningError: Propagated from the planner
    """
    caps = capabilities or RobotCapabilities()
    planning_grid = inflate_obstacles(grid, inflation_margin) if inflation_margin > 0 else grid
    waypoints = planner.plan(planning_grid, start, goal, caps, audit_dir=audit_dir)
    if not waypoints:
        raise ValueError("Planner returned no waypoints")

    if len(waypoints) == 1 and distance(start, waypoints[0].position) < DEFAULT_REACH_RADIUS:
        logger.info("Start already holds the only waypoint, immediate success")
        return _already_there(start, waypoints[0], time_limit)

    start_pose = Pose(start[0], start[1], 0.0)
    yaw = heading_to(start_pose, waypoints[0].position) if waypoints[0].position != start else 0.0
    spec = TaskSpec(
        kind=TaskKind.HIERARCHICAL,
        arena=grid,
        starts=[Pose(start[0], start[1], yaw)],
        time_limit=time_limit,
        variant=planner.name,
        waypoints=list(waypoints),
        success_on_terminal=True,
        reinit_on_failure=False,
        stop_on_success=True,
        capabilities=caps,
        gains=gains or ControllerGains(),
        reward=reward or RewardConfig(),
        dt=dt,
        seed=seed,
    )
    logger.info(f"Hierarchical episode with {len(waypoints)} waypoints from {planner.name}")
    log = run_episode(spec, 0, policy)
    logger.info(f"Hierarchical episode: {log.outcome.value} after {log.samples[-1].t:.2f} s")
    return log


def run_waypoint_tracking(
    grid: TerrainGrid,
    robots: int = DEFAULT_ROBOTS,
    time_limit: float = TRACKING_TIME_LIMIT,
    phase: Phase = Phase.FINETUNE,
    seed: int = 0,
    capabilities: Optional[RobotCapabilities] = None,
    gains: Optional[ControllerGains] = None,
    reward: Optional[RewardConfig] = None,
    parallel: int = 1,
    dt: float = 0.02,
    policy: Optional[Policy] = None
) -> Tuple[List[EpisodeLog], Metrics]:
    """
    WP-Random rollouts with dynamically sampled waypoints and per-step rewards.

    Robots start on the flat start rows facing into their area. Success
    means surviving the whole episode; metrics also report the mean number
    of waypoints reached and the mean per-step reward.
    """
    if grid.scenario != Scenario.WP_RANDOM:
        raise ValueError(f"Waypoint tracking needs a WP-Random grid, got {grid.scenario.value}")
    area_rows = (grid.area_shape or (grid.rows, grid.cols))[0]
    start_units = [u for u in grid.iter_units() if u.row % area_rows == 0]
    starts = [
        Pose(*start_units[i % len(start_units)].center, math.pi / 2)
        for i in range(robots)
    ]
    spec = TaskSpec(
        kind=TaskKind.WAYPOINT_TRACKING,
        arena=grid,
        starts=starts,
        time_limit=time_limit,
        variant=phase.value if isinstance(phase, Phase) else str(phase),
        random_waypoints=True,
        success_on_survival=True,
        reinit_on_failure=False,
        capabilities=capabilities or RobotCapabilities(),
        gains=gains or ControllerGains(),
        reward=reward or RewardConfig(),
        phase=Phase(phase),
        dt=dt,
        seed=seed,
    )
    logs = run_robots(spec, parallel, policy=policy)
    metrics = compute_metrics(logs, time_limit)
    logger.info(
        f"Waypoint tracking SR={metrics.sr:.2f} mean reached={metrics.mean_reached:.2f} "
        f"mean reward={metrics.mean_reward if metrics.mean_reward is not None else float('nan'):.3f}"
    )
    return logs, metrics


def summarize(logs: Sequence[EpisodeLog]) -> str:
    """One-line outcome tally"""
    counts = {}
    for log in logs:
        counts[log.outcome.value] = counts.get(log.outcome.value, 0) + 1
    return ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
