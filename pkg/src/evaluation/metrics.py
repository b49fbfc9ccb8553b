"""SR / ATD / AST aggregation"""

from typing import Optional, Sequence

import numpy as np

from .models import EpisodeLog, Metrics


def compute_metrics(logs: Sequence[EpisodeLog], time_limit: Optional[float] = None) -> Metrics:
    """
    Aggregate episode logs in robot-index order.

    SR is the success fraction; ATD the mean over robots of the largest
    distance from the start; AST the mean success time with every other
    robot counted at the time limit, undefined when nothing succeeded.

    Args:
        logs: One log per robot
        time_limit: Fill value for non-successes, defaults to each log's limit

    Returns:
        Metrics
    """
    if not logs:
        raise ValueError("Cannot compute metrics without episode logs")
    ordered = sorted(logs, key=lambda log: log.robot)
    robots = len(ordered)
    successes = [log for log in ordered if log.succeeded]

    sr = len(successes) / robots
    atd = float(np.mean([log.max_distance() for log in ordered]))
    ast = None
    if successes:
        times = [
            log.success_time if log.succeeded else (time_limit if time_limit is not None else log.time_limit)
            for log in ordered
        ]
        ast = float(np.mean(times))

    reached = [log.reached_count for log in ordered]
    rewards = [float(np.mean([r.total for r in log.rewards])) for log in ordered if log.rewards]
    return Metrics(
        sr=sr,
        atd=atd,
        ast=ast,
        robots=robots,
        mean_reached=float(np.mean(reached)),
        mean_reward=float(np.mean(rewards)) if rewards else None,
    )
