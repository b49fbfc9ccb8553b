"""Run-directory persistence: episode CSVs, results table and run metadata"""

import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import pandas as pd
from loguru import logger

from .episode import REINIT_EVENT, SUCCESS_EVENT
from .models import EpisodeEvent, EpisodeLog, Metrics, Outcome, TrajectorySample

TRAJECTORY_COLUMNS = ["t", "x", "y", "yaw", "vx", "vy", "event"]
REWARD_COLUMNS = ["step", "r_reach", "r_stay", "r_track", "r_yaw", "gate", "total"]
RESULT_COLUMNS = ["task", "variant", "SR", "ATD_m", "AST_s"]
FAILURE_EVENTS = ("collision", "fell")


def trajectory_frame(log: EpisodeLog) -> pd.DataFrame:
    return pd.DataFrame([s._asdict() for s in log.samples], columns=TRAJECTORY_COLUMNS)


def save_episode_logs(logs: Sequence[EpisodeLog], run_dir: Union[str, Path]) -> List[Path]:
    """
    Write trajectory_<i>.csv and rewards_<i>.csv for every robot.

    Returns:
        Paths of the trajectory files
    """
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for log in logs:
        path = run_dir / f"trajectory_{log.robot}.csv"
        trajectory_frame(log).to_csv(path, index=False, float_format="%.6f")
        rewards = pd.DataFrame(
            [r.to_row(step) for step, r in enumerate(log.rewards, start=1)],
            columns=REWARD_COLUMNS,
        )
        rewards.to_csv(run_dir / f"rewards_{log.robot}.csv", index=False, float_format="%.9g")
        written.append(path)
    logger.info(f"Saved {len(written)} episode logs to {run_dir}")
    return written


def load_episode_logs(run_dir: Union[str, Path], time_limit: float) -> List[EpisodeLog]:
    """
    Rebuild episode logs from trajectory CSVs.

    Outcome and success time come from the event column; the start is the
    first sample.

    Args:
        run_dir: Run directory
        time_limit: Episode time limit of the run

    Returns:
        Logs in robot-index order
    """
    run_dir = Path(run_dir)
    files = sorted(
        run_dir.glob("trajectory_*.csv"),
        key=lambda p: int(p.stem.split("_")[-1]),
    )
    if not files:
        raise FileNotFoundError(f"No trajectory_*.csv files in {run_dir}")

    logs = []
    for path in files:
        df = pd.read_csv(path, keep_default_na=False)
        samples = [
            TrajectorySample(
                t=float(row.t), x=float(row.x), y=float(row.y), yaw=float(row.yaw),
                vx=float(row.vx), vy=float(row.vy), event=str(row.event),
            )
            for row in df.itertuples(index=False)
        ]
        if not samples:
            raise ValueError(f"{path} holds no samples")
        events = [EpisodeEvent(s.t, s.event) for s in samples if s.event]
        log = EpisodeLog(
            robot=int(path.stem.split("_")[-1]),
            start=(samples[0].x, samples[0].y),
            time_limit=time_limit,
            samples=samples,
            events=events,
        )
        success = next((e for e in events if e.kind == SUCCESS_EVENT), None)
        if success is not None:
            log.outcome, log.success_time = Outcome.SUCCESS, success.t
        elif any(e.kind in FAILURE_EVENTS or e.kind == REINIT_EVENT for e in events):
            log.outcome = Outcome.FAILED
        logs.append(log)
    logger.info(f"Loaded {len(logs)} episode logs from {run_dir}")
    return logs


def result_row(task: str, variant: str, metrics: Metrics) -> Dict[str, str]:
    return {
        "task": task,
        "variant": variant,
        "SR": f"{metrics.sr:.2f}",
        "ATD_m": f"{metrics.atd:.1f}",
        "AST_s": metrics.ast_text,
    }


def save_results(rows: Sequence[Dict[str, str]], path: Union[str, Path]) -> Path:
    """Results table with columns task, variant, SR, ATD_m, AST_s"""
    path = Path(path)
    pd.DataFrame(list(rows), columns=RESULT_COLUMNS).to_csv(path, index=False)
    return path


def save_run_metadata(metadata: Dict[str, Any], run_dir: Union[str, Path]) -> Path:
    path = Path(run_dir) / "run.json"
    path.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n")
    return path


def load_run_metadata(run_dir: Union[str, Path]) -> Dict[str, Any]:
    path = Path(run_dir) / "run.json"
    if not path.exists():
        raise FileNotFoundError(f"No run.json in {run_dir}")
    return json.loads(path.read_text())
