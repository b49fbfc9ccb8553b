"""High-level planners: grid search with segmentation, and the LLM route"""

from ..terrain.occupancy import OccupancyMap
from .grid_search import (
    DIAGONAL_COST,
    STRAIGHT_COST,
    Heuristic,
    PlannedPath,
    PlanRequest,
    plan_astar,
    plan_dijkstra,
)
from .segmentation import DEFAULT_MAX_GAP, DEFAULT_MIN_GAP, segment_path
from .prompts import PROMPT_SECTIONS, build_llm_prompt, render_unit_grid
from .llm_parser import extract_unit_indices, format_llm_waypoints, parse_llm_waypoints
from .backends import ChatBackend, OpenAIChatBackend, ReplayBackend
from .llm_planner import MAX_REASKS, llm_plan
from .base import BasePlanner, GridPlanner, LLMPlanner
from .factory import get_planner

__all__ = [
    "OccupancyMap",
    "DIAGONAL_COST",
    "STRAIGHT_COST",
    "Heuristic",
    "PlannedPath",
    "PlanRequest",
    "plan_astar",
    "plan_dijkstra",
    "DEFAULT_MAX_GAP",
    "DEFAULT_MIN_GAP",
    "segment_path",
    "PROMPT_SECTIONS",
    "build_llm_prompt",
    "render_unit_grid",
    "extract_unit_indices",
    "format_llm_waypoints",
    "parse_llm_waypoints",
    "ChatBackend",
    "OpenAIChatBackend",
    "ReplayBackend",
    "MAX_REASKS",
    "llm_plan",
    "BasePlanner",
    "GridPlanner",
    "LLMPlanner",
    "get_planner",
]
