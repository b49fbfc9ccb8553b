"""Base planner class and the two planner routes"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from loguru import logger

from ..geometry import Vec2
from ..robot.models import RobotCapabilities
from ..terrain.models import TerrainGrid
from ..terrain.occupancy import to_occupancy
from ..waypoints.models import Waypoint
from .backends import ChatBackend
from .grid_search import Heuristic, PlanRequest, plan_astar, plan_dijkstra
from .llm_planner import MAX_REASKS, llm_plan
from .segmentation import DEFAULT_MAX_GAP, DEFAULT_MIN_GAP, segment_path


class BasePlanner(ABC):
    """
    Abstract high-level planner: (terrain, start, goal) -> waypoints.
    """

    def __init__(self, name: str):
        self.name = name
        logger.info(f"Initializing {self.name} planner")

    @abstractmethod
    def plan(
        self,
        grid: TerrainGrid,
        start: Vec2,
        goal: Vec2,
        caps: RobotCapabilities,
        audit_dir: Optional[Union[str, Path]] = None
    ) -> List[Waypoint]:
        """
        Produce the waypoint sequence from start to goal.

        Args:
            grid: Terrain (planner-facing virtual obstacles are used)
            start: Start position (m)
            goal: Goal position (m)
            caps: Robot capabilities
            audit_dir: Optional directory for planner artifacts

        Returns:
            Ordered waypoints
        """
        pass

    @abstractmethod
    def get_capabilities(self) -> Dict[str, Any]:
        """Planner settings for run metadata"""
        pass


class GridPlanner(BasePlanner):
    """Classical search over a wall-only occupancy map plus path segmentation"""

    def __init__(
        self,
        algorithm: str = "astar",
        heuristic: Heuristic = Heuristic.OCTILE,
        cell_size: float = 0.5,
        min_gap: float = DEFAULT_MIN_GAP,
        max_gap: float = DEFAULT_MAX_GAP
    ):
        if algorithm not in ("astar", "dijkstra"):
            raise ValueError(f"Unknown grid search algorithm: {algorithm}")
        super().__init__(name=algorithm)
        self.algorithm = algorithm
        self.heuristic = Heuristic(heuristic)
        self.cell_size = cell_size
        self.min_gap = min_gap
        self.max_gap = max_gap

    def plan(self, grid, start, goal, caps, audit_dir=None) -> List[Waypoint]:
        occupancy = to_occupancy(grid, self.cell_size, wall_only=True)
        req = PlanRequest(start=start, goal=goal, map=occupancy)
        if self.algorithm == "astar":
            path = plan_astar(req, self.heuristic)
        else:
            path = plan_dijkstra(req)
        waypoints = segment_path(path, self.min_gap, self.max_gap)
        logger.info(
            f"{self.name}: path of {len(path)} cells ({path.cost:.2f} m) "
            f"-> {len(waypoints)} waypoints"
        )
        return waypoints

    def get_capabilities(self) -> Dict[str, Any]:
        return {
            "planner": self.algorithm,
            "heuristic": self.heuristic.value if self.algorithm == "astar" else None,
            "cell_size": self.cell_size,
            "min_gap": self.min_gap,
            "max_gap": self.max_gap,
        }


class LLMPlanner(BasePlanner):
    """Prompted planner emitting terrain-unit waypoints"""

    def __init__(self, backend: ChatBackend, max_reasks: int = MAX_REASKS):
        super().__init__(name=backend.name)
        self.backend = backend
        self.max_reasks = max_reasks

    def plan(self, grid, start, goal, caps, audit_dir=None) -> List[Waypoint]:
        req = PlanRequest(
            start=start,
            goal=goal,
            unit_grid=grid,
            capabilities_text=caps.describe(),
        )
        return llm_plan(req, self.backend, audit_dir=audit_dir, max_reasks=self.max_reasks)

    def get_capabilities(self) -> Dict[str, Any]:
        return {"planner": self.backend.name, "max_reasks": self.max_reasks}
