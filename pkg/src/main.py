"""Main application entry point for the hierarchical navigation sandbox"""

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from .config.run_config import (
    RunConfig,
    apply_overrides,
    build_terrain,
    dump_run_config,
    load_run_config,
)
from .config.settings import get_settings
from .errors import ConfigError, PlanningError
from .evaluation.export import (
    load_episode_logs,
    load_run_metadata,
    result_row,
    save_episode_logs,
    save_results,
    save_run_metadata,
)
from .evaluation.heatmap import accumulate_heatmap, save_heatmap_image, save_heatmap_text
from .evaluation.metrics import compute_metrics
from .evaluation.models import EpisodeLog, Heatmap, Metrics
from .evaluation.tasks import (
    HIERARCHICAL_TIME_LIMIT,
    OMNI_TIME_LIMIT,
    SINGLE_TIME_LIMIT,
    TRACKING_TIME_LIMIT,
    omni_traverse_spec,
    run_hierarchical,
    run_omni_traverse,
    run_single_traverse,
    run_waypoint_tracking,
    single_traverse_spec,
    summarize,
)
from .planner.factory import get_planner
from .planner.grid_search import Heuristic
from .terrain.inflation import inflate_obstacles
from .terrain.io import save_heightfield_binary, save_heightfield_text
from .terrain.models import Scenario, TerrainGrid
from .terrain.occupancy import save_occupancy, to_occupancy
from .waypoints.io import save_waypoints
from .waypoints.preset import preset_fixed_waypoints

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2

TASK_LABELS = {
    "single": "single-traverse",
    "omni": "omni-traverse",
    "tracking": "waypoint-tracking",
}


class NavigationApp:
    """
    Main application class binding configuration, terrain, tasks and exports.
    Every command writes into its own run directory.
    """

    def __init__(self, config: RunConfig, command: str, run_dir: Optional[Path] = None):
        """
        Initialize the application.

        Args:
            config: Validated run configuration
            command: Command name, used in the run directory name
            run_dir: Explicit run directory (a fresh timestamped one if None)
        """
        self.settings = get_settings()
        self.config = config
        self.command = command
        self.run_dir = run_dir or self._make_run_dir()
        self.run_dir.mkdir(parents=True, exist_ok=True)

        self._configure_logging()
        logger.info(f"Run directory: {self.run_dir}")
        dump_run_config(config, self.run_dir / "config.yaml")

    def _make_run_dir(self) -> Path:
        base = self.config.output_dir or self.settings.runs_dir
        stamp = time.strftime("%Y%m%d-%H%M%S")
        return Path(base) / f"{self.command}_{stamp}_seed{self.config.seed}"

    def _configure_logging(self) -> None:
        """Configure logging settings"""
        logger.remove()  # Remove default handler

        # Add console handler
        logger.add(
            sys.stderr,
            format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>",
            level=self.settings.log_level
        )

        # Add file handler
        logger.add(
            self.run_dir / "navigation.log",
            rotation="100 MB",
            level="DEBUG"
        )

    def _write_metadata(self, task: str, variant: str, time_limit: float, **extra: Any) -> None:
        metadata = {
            "task": task,
            "variant": variant,
            "seed": self.config.seed,
            "time_limit": time_limit,
            "dt": self.config.task.dt,
        }
        metadata.update(extra)
        save_run_metadata(metadata, self.run_dir)

    def generate(self) -> Dict[str, Any]:
        """
        Generate the configured terrain and write its artifacts.

        Writes heightfield.txt, heightfield.bin, occupancy.txt and, for
        WP-Fixed terrain, the preset waypoints.

        Returns:
            Summary dictionary (also printed)
        """
        grid = build_terrain(self.config)
        save_heightfield_text(grid.heightfield, self.run_dir / "heightfield.txt")
        save_heightfield_binary(grid.heightfield, grid.resolution, self.run_dir / "heightfield.bin")

        margin = self.config.planner.inflation_margin
        planning_grid = inflate_obstacles(grid, margin) if margin > 0 else grid
        occupancy = to_occupancy(planning_grid, self.config.planner.cell_size, wall_only=True)
        save_occupancy(occupancy, self.run_dir / "occupancy.txt")

        if grid.scenario == Scenario.WP_FIXED:
            tracks = preset_fixed_waypoints(grid)
            save_waypoints([wp for track in tracks for wp in track], self.run_dir / "waypoints.txt")

        summary = self._terrain_summary(grid)
        self._write_metadata("generate", grid.scenario.value, 0.0, summary=summary)
        self._print_summary(summary)
        return summary

    @staticmethod
    def _terrain_summary(grid: TerrainGrid) -> Dict[str, Any]:
        levels = sorted({unit.difficulty for unit in grid.iter_units()})
        return {
            "scenario": grid.scenario.value,
            "unit_rows": grid.rows,
            "unit_cols": grid.cols,
            "units": grid.rows * grid.cols,
            "tracks": grid.track_count,
            "size_m": [round(v, 6) for v in grid.size],
            "features": len(grid.obstacles),
            "kinds": {kind.value: n for kind, n in grid.kind_counts().items() if n},
            "difficulty": [levels[0], levels[-1]] if levels else [],
        }

    def _print_summary(self, summary: Dict[str, Any]) -> None:
        print("\n" + "=" * 60)
        print(f"  {summary['scenario']} terrain")
        print("=" * 60)
        if summary["tracks"]:
            print(f"Tracks:     {summary['tracks']}")
        print(f"Units:      {summary['units']} ({summary['unit_rows']} x {summary['unit_cols']})")
        print(f"Size:       {summary['size_m'][0]:g} x {summary['size_m'][1]:g} m")
        print(f"Features:   {summary['features']}")
        for kind, n in summary["kinds"].items():
            print(f"  {kind:<10}{n}")
        if summary["difficulty"]:
            lo, hi = summary["difficulty"]
            print(f"Difficulty: {lo:.2f} - {hi:.2f}")
        print("=" * 60)

    def evaluate(self, task: str) -> int:
        """
        Run an evaluation task and write logs, results and heatmap.

        Args:
            task: "single", "omni" or "tracking"

        Returns:
            Exit code: 1 if any episode hit an internal error, else 0
        """
        cfg, t = self.config, self.config.task
        common = dict(
            capabilities=cfg.capabilities,
            gains=cfg.controller,
            reward=cfg.reward,
        )

        heatmap: Optional[Heatmap] = None
        if task == "single":
            time_limit = t.time_limit or SINGLE_TIME_LIMIT
            spec = single_traverse_spec(
                kind=t.test_kind, difficulty=t.difficulty, with_obstacles=t.with_obstacles,
                robots=t.robots, time_limit=time_limit, seed=cfg.seed,
                unit_size=cfg.scenario.unit_size, track_width=cfg.scenario.track_width,
                dt=t.dt, **common,
            )
            logs, metrics = run_single_traverse(spec, t.parallel)
            variant, arena = spec.variant, spec.arena
        elif task == "omni":
            time_limit = t.time_limit or OMNI_TIME_LIMIT
            arena = build_terrain(cfg) if cfg.scenario.kind == "arena" else None
            spec = omni_traverse_spec(
                arena=arena, robots=t.robots, time_limit=time_limit,
                with_obstacles=t.with_obstacles, seed=cfg.seed, dt=t.dt, **common,
            )
            logs, metrics, heatmap = run_omni_traverse(spec, t.parallel, t.heatmap_cell)
            variant, arena = spec.variant, spec.arena
        elif task == "tracking":
            time_limit = t.time_limit or TRACKING_TIME_LIMIT
            if cfg.scenario.kind != "wp_random":
                raise ConfigError("scenario.kind must be wp_random for the tracking task")
            arena = build_terrain(cfg)
            logs, metrics = run_waypoint_tracking(
                arena, robots=t.robots, time_limit=time_limit, phase=t.phase,
                seed=cfg.seed, parallel=t.parallel, dt=t.dt, **common,
            )
            variant = t.phase.value
        else:
            raise ConfigError(f"Unknown task: {task}")

        if heatmap is None:
            heatmap = accumulate_heatmap(logs, t.heatmap_cell, extent=arena.size)
        self._write_outputs(TASK_LABELS[task], variant, time_limit, logs, metrics, heatmap)
        return self._exit_code(logs)

    def navigate(self, start: Sequence[float], goal: Sequence[float]) -> int:
        """
        Plan from start to goal with the configured planner and run the episode.

        Args:
            start: Start position (m)
            goal: Goal position (m)

        Returns:
            Exit code
        """
        cfg, p = self.config, self.config.planner
        grid = build_terrain(cfg)
        planner = get_planner(
            p.planner,
            settings=self.settings,
            heuristic=Heuristic(p.heuristic),
            cell_size=p.cell_size,
            min_gap=p.min_gap,
            max_gap=p.max_gap,
            max_reasks=p.max_reasks,
        )
        time_limit = cfg.task.time_limit or HIERARCHICAL_TIME_LIMIT

        try:
            log = run_hierarchical(
                grid, planner, tuple(start), tuple(goal),
                seed=cfg.seed,
                capabilities=cfg.capabilities,
                gains=cfg.controller,
                reward=cfg.reward,
                time_limit=time_limit,
                inflation_margin=p.inflation_margin,
                audit_dir=self.run_dir,
                dt=cfg.task.dt,
            )
        except PlanningError as e:
            logger.error(f"Planning failed with {planner.name}: {e}")
            self._write_metadata("hierarchical", planner.name, time_limit, error=str(e))
            return EXIT_INTERNAL

        save_waypoints(log.waypoints_used, self.run_dir / "waypoints.txt")
        metrics = compute_metrics([log], time_limit)
        heatmap = accumulate_heatmap([log], cfg.task.heatmap_cell, extent=grid.size)
        self._write_outputs(
            "hierarchical", planner.name, time_limit, [log], metrics, heatmap,
            planner=planner.get_capabilities(), start=list(start), goal=list(goal),
        )
        print(f"Outcome: {log.outcome.value}, waypoints reached: {log.reached_count}")
        return self._exit_code([log])

    def _write_outputs(
        self,
        task: str,
        variant: str,
        time_limit: float,
        logs: List[EpisodeLog],
        metrics: Metrics,
        heatmap: Heatmap,
        **extra: Any
    ) -> None:
        save_episode_logs(logs, self.run_dir)
        row = result_row(task, variant, metrics)
        save_results([row], self.run_dir / "results.csv")
        save_heatmap_text(heatmap, self.run_dir / "heatmap.txt")
        save_heatmap_image(heatmap, self.run_dir / "heatmap.png")
        self._write_metadata(task, variant, time_limit, robots=len(logs), **extra)
        logger.info(f"Outcomes: {summarize(logs)}")
        print_results([row])

    @staticmethod
    def _exit_code(logs: Sequence[EpisodeLog]) -> int:
        broken = [log for log in logs if log.internal_error]
        for log in broken:
            logger.error(f"Robot {log.robot} hit an internal error: {log.internal_error}")
        return EXIT_INTERNAL if broken else EXIT_OK


def print_results(rows: Sequence[Dict[str, str]]) -> None:
    """Print result rows as a fixed-width table"""
    print(f"\n{'task':<20}{'variant':<30}{'SR':>6}{'ATD_m':>8}{'AST_s':>8}")
    print("-" * 72)
    for row in rows:
        print(f"{row['task']:<20}{row['variant']:<30}{row['SR']:>6}{row['ATD_m']:>8}{row['AST_s']:>8}")


def replay_metrics(run_dir: Path) -> Dict[str, str]:
    """
    Recompute SR / ATD / AST from the trajectory CSVs of a finished run.

    Args:
        run_dir: Run directory holding run.json and trajectory_<i>.csv

    Returns:
        Result row
    """
    metadata = load_run_metadata(run_dir)
    logs = load_episode_logs(run_dir, float(metadata["time_limit"]))
    metrics = compute_metrics(logs, float(metadata["time_limit"]))
    row = result_row(metadata.get("task", ""), metadata.get("variant", ""), metrics)
    print_results([row])
    return row


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Hierarchical legged-navigation sandbox: terrain, waypoints, planners and evaluation"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", "-c", type=Path, required=True, help="YAML run configuration")
        p.add_argument("--seed", type=int, help="Override the config seed")
        p.add_argument("--output-dir", type=Path, help="Parent directory for the run directory")

    p_gen = sub.add_parser("generate", help="Generate terrain, occupancy map and preset waypoints")
    add_common(p_gen)

    p_eval = sub.add_parser("eval", help="Run an evaluation task")
    p_eval.add_argument("task", choices=sorted(TASK_LABELS), help="Task to run")
    add_common(p_eval)
    p_eval.add_argument("--robots", type=int, help="Number of robots")
    p_eval.add_argument("--parallel", type=int, help="Worker processes")
    p_eval.add_argument(
        "--with-obstacles", action="store_true", default=None,
        help="Add high obstacles (the 'with obst.' variant)"
    )

    p_nav = sub.add_parser("navigate", help="Plan waypoints and run one hierarchical episode")
    add_common(p_nav)
    p_nav.add_argument("--start", type=float, nargs=2, metavar=("X", "Y"), help="Start position (m)")
    p_nav.add_argument("--goal", type=float, nargs=2, metavar=("X", "Y"), help="Goal position (m)")
    p_nav.add_argument("--planner", type=str, help="astar, dijkstra, llm or replay:<file>")

    p_replay = sub.add_parser("replay-metrics", help="Recompute metrics from a run directory")
    p_replay.add_argument("run_dir", type=Path, help="Run directory")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for CLI application"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "replay-metrics":
            replay_metrics(args.run_dir)
            return EXIT_OK

        config = load_run_config(args.config)
        config = apply_overrides(config, {
            "seed": args.seed,
            "output_dir": str(args.output_dir) if args.output_dir else None,
            "task.robots": getattr(args, "robots", None),
            "task.parallel": getattr(args, "parallel", None),
            "task.with_obstacles": getattr(args, "with_obstacles", None),
            "planner.planner": getattr(args, "planner", None),
        })

        if args.command == "navigate":
            start = args.start or config.task.start
            goal = args.goal or config.task.goal
            if start is None or goal is None:
                raise ConfigError("navigate needs --start and --goal (or task.start / task.goal)")

        app = NavigationApp(config, args.command)
        if args.command == "generate":
            app.generate()
            return EXIT_OK
        if args.command == "eval":
            return app.evaluate(args.task)
        return app.navigate(start, goal)

    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        print(f"\nConfiguration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        logger.error(str(e))
        print(f"\nError: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f"Application error: {e}")
        print(f"\nError: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
