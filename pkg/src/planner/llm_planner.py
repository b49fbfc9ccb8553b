"""LLM route of the high-level planner"""

from pathlib import Path
from typing import List, Optional, Tuple, Union

from loguru import logger

from ..errors import IndexOutOfRange, OutOfBounds, ParseError
from ..geometry import Vec2
from ..terrain.models import TerrainGrid
from ..waypoints.models import Waypoint
from .backends import ChatBackend
from .grid_search import PlanRequest
from .llm_parser import parse_llm_waypoints
from .prompts import SYSTEM_PROMPT, build_llm_prompt

MAX_REASKS = 2


def _unit_index(grid: TerrainGrid, point: Vec2, name: str) -> Tuple[int, int]:
    index = grid.unit_at(*point)
    if index is None:
        raise OutOfBounds(f"{name} {point} lies outside the terrain")
    return index


def llm_plan(
    req: PlanRequest,
    backend: ChatBackend,
    audit_dir: Optional[Union[str, Path]] = None,
    max_reasks: int = MAX_REASKS
) -> List[Waypoint]:
    """
    Ask the backend for unit-index waypoints and convert them to unit centers.

    An unusable answer is sent back with the parser diagnostic appended, up
    to max_reasks times. Waypoints are not checked for feasibility. The
    prompt and every raw answer are written to audit_dir when given.

    Args:
        req: Plan request carrying unit_grid and capabilities_text
        backend: Chat-completion backend
        audit_dir: Directory for llm_prompt.txt and llm_response_<k>.txt
        max_reasks: Extra attempts after an unparseable answer

    Returns:
        Parsed waypoints

    Raises:
        BackendError: Transport failure, no waypoints emitted
        ParseError, IndexOutOfRange: Still unusable after the retry budget
    """
    grid = req.unit_grid
    if grid is None:
        raise ValueError("LLM planning needs a unit grid in the request")
    start = _unit_index(grid, req.start, "start")
    goal = _unit_index(grid, req.goal, "goal")

    prompt = build_llm_prompt(req.task, grid, req.capabilities_text, start, goal)
    audit = Path(audit_dir) if audit_dir is not None else None
    if audit is not None:
        audit.mkdir(parents=True, exist_ok=True)
        (audit / "llm_prompt.txt").write_text(prompt)

    messages = [
        {"role": "system", "content": SYSTEM_PROMPT},
        {"role": "user", "content": prompt},
    ]
    last_error: Optional[Exception] = None
    for attempt in range(max_reasks + 1):
        logger.info(f"Requesting waypoints from {backend.name} (attempt {attempt + 1})")
        answer = backend.complete(messages)
        if audit is not None:
            (audit / f"llm_response_{attempt}.txt").write_text(answer)
        try:
            waypoints = parse_llm_waypoints(
                answer, grid.rows, grid.cols, grid.unit_size, grid.unit_width
            )
        except (ParseError, IndexOutOfRange) as e:
            last_error = e
            logger.warning(f"Unusable planner answer: {e}")
            messages.append({"role": "assistant", "content": answer})
            messages.append({
                "role": "user",
                "content": (
                    f"Your answer could not be used: {e}. Reply again and end with a "
                    "```waypoints block listing one (row,col) pair per line."
                ),
            })
            continue
        logger.info(f"LLM planner returned {len(waypoints)} waypoints")
        return waypoints

    raise last_error
