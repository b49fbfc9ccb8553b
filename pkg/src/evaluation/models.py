"""Evaluation data types: task specs, episode logs, metrics and heatmaps"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional

import numpy as np

from ..geometry import Pose, Vec2, distance
from ..reward.models import Phase, RewardBreakdown, RewardConfig
from ..robot.models import ControllerGains, RobotCapabilities
from ..terrain.models import TerrainGrid
from ..waypoints.models import DEFAULT_REACH_RADIUS, DEFAULT_STAY_DURATION, Waypoint

UNDEFINED = "/"


class TaskKind(str, Enum):
    SINGLE_TRAVERSE = "single"
    OMNI_TRAVERSE = "omni"
    HIERARCHICAL = "hierarchical"
    WAYPOINT_TRACKING = "tracking"


class Outcome(str, Enum):
    SUCCESS = "success"
    TIMEOUT = "timeout"
    FAILED = "failed"


@dataclass(frozen=True, eq=False)
class TaskSpec:
    """
    One evaluation task.

    Waypoints come from exactly one provider: a shared list (`waypoints`),
    an outward ray per robot (`ray_spacing`), or dynamic sampling
    (`random_waypoints`). Success is crossing `success_x`, leaving the start
    by more than `success_distance`, holding the final waypoint
    (`success_on_terminal`) or surviving the whole episode
    (`success_on_survival`).
    """
    kind: TaskKind
    arena: TerrainGrid
    starts: List[Pose]
    time_limit: float
    variant: str = ""
    waypoints: Optional[List[Waypoint]] = None
    ray_spacing: Optional[float] = None
    ray_count: int = 3
    random_waypoints: bool = False
    success_x: Optional[float] = None
    success_distance: Optional[float] = None
    success_on_terminal: bool = False
    success_on_survival: bool = False
    reinit_on_failure: bool = True
    stop_on_success: bool = False
    dt: float = 0.02
    reach_radius: float = DEFAULT_REACH_RADIUS
    stay_duration: float = DEFAULT_STAY_DURATION
    capabilities: RobotCapabilities = field(default_factory=RobotCapabilities)
    gains: ControllerGains = field(default_factory=ControllerGains)
    reward: RewardConfig = field(default_factory=RewardConfig)
    phase: Phase = Phase.FINETUNE
    seed: int = 0

    def __post_init__(self):
        if not self.starts:
            raise ValueError("A task needs at least one robot start")
        if self.time_limit <= 0 or self.dt <= 0:
            raise ValueError("time_limit and dt must be positive")

    @property
    def robots(self) -> int:
        return len(self.starts)

    @property
    def orientations(self) -> List[float]:
        return [pose.yaw for pose in self.starts]


class TrajectorySample(NamedTuple):
    t: float
    x: float
    y: float
    yaw: float
    vx: float
    vy: float
    event: str = ""


@dataclass(frozen=True)
class EpisodeEvent:
    t: float
    kind: str
    detail: str = ""


@dataclass
class EpisodeLog:
    """Timestamped trajectory and outcome of one robot's episode"""
    robot: int
    start: Vec2
    time_limit: float
    samples: List[TrajectorySample] = field(default_factory=list)
    events: List[EpisodeEvent] = field(default_factory=list)
    waypoints_used: List[Waypoint] = field(default_factory=list)
    rewards: List[RewardBreakdown] = field(default_factory=list)
    outcome: Outcome = Outcome.TIMEOUT
    success_time: Optional[float] = None
    reached_count: int = 0
    internal_error: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.outcome == Outcome.SUCCESS

    def max_distance(self) -> float:
        """Largest distance from the start over the trajectory"""
        if not self.samples:
            return 0.0
        return max(distance((s.x, s.y), self.start) for s in self.samples)

    def positions(self) -> np.ndarray:
        return np.array([(s.x, s.y) for s in self.samples], dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class Metrics:
    """SR / ATD / AST over a set of episodes; ast is None when nothing succeeded"""
    sr: float
    atd: float
    ast: Optional[float]
    robots: int
    mean_reached: Optional[float] = None
    mean_reward: Optional[float] = None

    @property
    def ast_text(self) -> str:
        return UNDEFINED if self.ast is None else f"{self.ast:.1f}"


@dataclass(frozen=True, eq=False)
class Heatmap:
    """Visit counts; counts[i, j] covers origin + ([j, j+1) * cell, [i, i+1) * cell)"""
    counts: np.ndarray
    cell: float
    origin: Vec2 = (0.0, 0.0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())
