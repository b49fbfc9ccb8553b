"""Evaluation protocol: traverse tasks, hierarchical episodes, metrics and heatmaps"""

from .models import (
    UNDEFINED,
    EpisodeEvent,
    EpisodeLog,
    Heatmap,
    Metrics,
    Outcome,
    TaskKind,
    TaskSpec,
    TrajectorySample,
)
from .episode import make_source, run_episode, safe_run_episode
from .metrics import compute_metrics
from .heatmap import (
    DEFAULT_CELL,
    accumulate_heatmap,
    load_heatmap_text,
    save_heatmap_image,
    save_heatmap_text,
)
from .tasks import (
    omni_traverse_spec,
    run_hierarchical,
    run_omni_traverse,
    run_robots,
    run_single_traverse,
    run_waypoint_tracking,
    single_traverse_spec,
    summarize,
)
from .export import (
    load_episode_logs,
    load_run_metadata,
    result_row,
    save_episode_logs,
    save_results,
    save_run_metadata,
)

__all__ = [
    "UNDEFINED",
    "EpisodeEvent",
    "EpisodeLog",
    "Heatmap",
    "Metrics",
    "Outcome",
    "TaskKind",
    "TaskSpec",
    "TrajectorySample",
    "make_source",
    "run_episode",
    "safe_run_episode",
    "compute_metrics",
    "DEFAULT_CELL",
    "accumulate_heatmap",
    "load_heatmap_text",
    "save_heatmap_image",
    "save_heatmap_text",
    "omni_traverse_spec",
    "run_hierarchical",
    "run_omni_traverse",
    "run_robots",
    "run_single_traverse",
    "run_waypoint_tracking",
    "single_traverse_spec",
    "summarize",
    "load_episode_logs",
    "load_run_metadata",
    "result_row",
    "save_episode_logs",
    "save_results",
    "save_run_metadata",
]
