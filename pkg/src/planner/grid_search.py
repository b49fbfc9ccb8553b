"""A* and Dijkstra over 8-connected occupancy grids"""

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from itertools import count
from typing import Callable, Dict, List, Optional, Tuple

from loguru import logger

from ..errors import GoalOccupied, NoPath, OutOfBounds, StartOccupied
from ..geometry import Vec2
from ..terrain.models import TerrainGrid
from ..terrain.occupancy import OccupancyMap

Cell = Tuple[int, int]

# integer step costs: exact comparisons between searches, sqrt(2) rounded up
STRAIGHT_COST = 1_000_000
DIAGONAL_COST = 1_414_214

NEIGHBOURS = (
    (-1, 0, STRAIGHT_COST), (1, 0, STRAIGHT_COST), (0, -1, STRAIGHT_COST), (0, 1, STRAIGHT_COST),
    (-1, -1, DIAGONAL_COST), (-1, 1, DIAGONAL_COST), (1, -1, DIAGONAL_COST), (1, 1, DIAGONAL_COST),
)

DEFAULT_TASK = (
    "Guide the quadruped robot from its start position to the goal position "
    "across the terrain shown in the coarse map."
)


class Heuristic(str, Enum):
    EUCLIDEAN = "euclidean"
    OCTILE = "octile"


@dataclass(frozen=True)
class PlanRequest:
    """
    Start and goal in world coordinates with the map the planner reads.

    The classical route reads `map`; the LLM route reads `unit_grid` and
    `capabilities_text`.
    """
    start: Vec2
    goal: Vec2
    map: Optional[OccupancyMap] = None
    unit_grid: Optional[TerrainGrid] = None
    capabilities_text: str = ""
    task: str = DEFAULT_TASK


@dataclass(frozen=True)
class PlannedPath:
    """Cell path with its cell-center polyline; cost in meters and integer units"""
    cells: Tuple[Cell, ...]
    world_points: Tuple[Vec2, ...]
    cost: float
    cost_units: int

    def __len__(self) -> int:
        return len(self.cells)


def _octile(a: Cell, b: Cell) -> int:
    dr, dc = abs(a[0] - b[0]), abs(a[1] - b[1])
    return STRAIGHT_COST * (max(dr, dc) - min(dr, dc)) + DIAGONAL_COST * min(dr, dc)


def _euclidean(a: Cell, b: Cell) -> int:
    return math.floor(STRAIGHT_COST * math.hypot(a[0] - b[0], a[1] - b[1]))


HEURISTICS: Dict[Heuristic, Callable[[Cell, Cell], int]] = {
    Heuristic.OCTILE: _octile,
    Heuristic.EUCLIDEAN: _euclidean,
}


def _validate(req: PlanRequest) -> Tuple[OccupancyMap, Cell, Cell]:
    if req.map is None:
        raise ValueError("Grid search needs an occupancy map in the request")
    occ = req.map
    start, goal = occ.cell_of(req.start), occ.cell_of(req.goal)
    for name, cell, point in (("start", start, req.start), ("goal", goal, req.goal)):
        if not occ.in_bounds(cell):
            raise OutOfBounds(f"{name} {point} lies outside the {occ.shape[0]}x{occ.shape[1]} map")
    if not occ.is_free(start):
        raise StartOccupied(f"start cell {start} is occupied")
    if not occ.is_free(goal):
        raise GoalOccupied(f"goal cell {goal} is occupied")
    return occ, start, goal


def _neighbours(occ: OccupancyMap, node: Cell):
    for dr, dc, step in NEIGHBOURS:
        nxt = (node[0] + dr, node[1] + dc)
        if not occ.in_bounds(nxt) or not occ.is_free(nxt):
            continue
        # no cutting past occupied corners
        if dr and dc and not (occ.is_free((node[0] + dr, node[1])) and occ.is_free((node[0], node[1] + dc))):
            continue
        yield nxt, step


def _search(req: PlanRequest, heuristic: Callable[[Cell, Cell], int]) -> PlannedPath:
    occ, start, goal = _validate(req)
    g: Dict[Cell, int] = {start: 0}
    parent: Dict[Cell, Optional[Cell]] = {start: None}
    tie = count()
    h0 = heuristic(start, goal)
    # (f, h, insertion order, node): lowest h then oldest entry wins ties
    frontier = [(h0, h0, next(tie), start)]
    expanded = 0

    while frontier:
        f, h, _, node = heapq.heappop(frontier)
        if f != g[node] + h:
            continue
        if node == goal:
            break
        expanded += 1
        for nxt, step in _neighbours(occ, node):
            cost = g[node] + step
            if nxt not in g or cost < g[nxt]:
                g[nxt] = cost
                parent[nxt] = node
                h_next = heuristic(nxt, goal)
                heapq.heappush(frontier, (cost + h_next, h_next, next(tie), nxt))
    else:
        raise NoPath(f"No path from cell {start} to cell {goal}")

    cells: List[Cell] = [goal]
    while parent[cells[-1]] is not None:
        cells.append(parent[cells[-1]])
    cells.reverse()

    diagonal = sum(1 for a, b in zip(cells, cells[1:]) if a[0] != b[0] and a[1] != b[1])
    straight = len(cells) - 1 - diagonal
    cost = occ.cell_size * (straight + math.sqrt(2.0) * diagonal)
    logger.debug(f"Path of {len(cells)} cells, cost {cost:.2f} m, {expanded} expansions")
    return PlannedPath(
        cells=tuple(cells),
        world_points=tuple(occ.cell_center(c) for c in cells),
        cost=cost,
        cost_units=g[goal],
    )


def plan_astar(req: PlanRequest, heuristic: Heuristic = Heuristic.OCTILE) -> PlannedPath:
    """
    Minimum-cost 8-connected path with an admissible heuristic.

    Args:
        req: Plan request with an occupancy map
        heuristic: Euclidean or octile distance

    Returns:
        PlannedPath

    Raises:
        OutOfBounds, StartOccupied, GoalOccupied, NoPath
    """
    return _search(req, HEURISTICS[Heuristic(heuristic)])


def plan_dijkstra(req: PlanRequest) -> PlannedPath:
    """Uniform-cost search; same contract as plan_astar"""
    return _search(req, lambda a, b: 0)
