"""Exception hierarchy shared by all navigation modules"""

from typing import Tuple


class NavigationError(Exception):
    """Base class for all errors raised by the navigation stack"""


class ConfigError(NavigationError):
    """Run configuration could not be loaded or validated"""


class TerrainGenerationError(NavigationError):
    """No valid terrain arrangement found within the retry budget"""


class NoCandidate(NavigationError):
    """Waypoint sampler exhausted its budget without a feasible candidate"""


class PlanningError(NavigationError):
    """Base class for high-level planner failures"""


class NoPath(PlanningError):
    """Start and goal lie in different free components"""


class OutOfBounds(PlanningError):
    """Start or goal lies outside the map"""


class StartOccupied(PlanningError):
    """Start cell is occupied"""


class GoalOccupied(PlanningError):
    """Goal cell is occupied"""


class ParseError(PlanningError):
    """LLM answer does not contain a well-formed waypoint block"""


class IndexOutOfRange(PlanningError):
    """LLM answer references a terrain unit outside the grid"""

    def __init__(self, pair: Tuple[int, int], rows: int, cols: int):
        self.pair = pair
        self.rows = rows
        self.cols = cols
        super().__init__(
            f"Unit index {pair} outside grid of {rows} rows x {cols} cols"
        )


class BackendError(PlanningError):
    """Chat-completion backend failed (transport, HTTP or fixture error)"""


class DeadRobotError(NavigationError):
    """Attempted to step a robot whose episode already ended fatally"""
