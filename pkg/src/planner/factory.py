"""Factory for creating planners from a CLI/config choice"""

from typing import Optional

from loguru import logger

from ..config.settings import Settings, get_settings
from ..errors import BackendError, ConfigError
from .backends import OpenAIChatBackend, ReplayBackend
from .base import BasePlanner, GridPlanner, LLMPlanner
from .grid_search import Heuristic
from .llm_planner import MAX_REASKS
from .segmentation import DEFAULT_MAX_GAP, DEFAULT_MIN_GAP

REPLAY_PREFIX = "replay:"


def get_planner(
    choice: str,
    settings: Optional[Settings] = None,
    heuristic: Heuristic = Heuristic.OCTILE,
    cell_size: float = 0.5,
    min_gap: float = DEFAULT_MIN_GAP,
    max_gap: float = DEFAULT_MAX_GAP,
    max_reasks: int = MAX_REASKS
) -> BasePlanner:
    """
    Get the planner named by a choice string.

    Args:
        choice: "astar", "dijkstra", "llm" or "replay:<fixture file>"
        settings: Environment settings (LLM endpoint), cached ones if None
        heuristic: A* heuristic
        cell_size: Occupancy cell size for grid search (m)
        min_gap: Segmentation lower spacing (m)
        max_gap: Segmentation upper spacing (m)
        max_reasks: LLM retry budget

    Returns:
        Planner instance

    Raises:
        ConfigError: Unknown choice, unconfigured endpoint or unreadable fixture
    """
    if choice in ("astar", "dijkstra"):
        return GridPlanner(choice, heuristic, cell_size, min_gap, max_gap)

    if choice == "llm":
        settings = settings or get_settings()
        if not settings.llm_configured():
            raise ConfigError(
                "The llm planner needs OPENAI_BASE_URL and OPENAI_API_KEY in the "
                "environment or .env file"
            )
        logger.info(f"Using chat endpoint {settings.openai_base_url} with {settings.llm_model}")
        backend = OpenAIChatBackend(
            api_key=settings.openai_api_key,
            base_url=settings.openai_base_url,
            model=settings.llm_model,
            temperature=settings.llm_temperature,
            timeout=settings.llm_timeout,
        )
        return LLMPlanner(backend, max_reasks)

    if choice.startswith(REPLAY_PREFIX):
        path = choice[len(REPLAY_PREFIX):]
        if not path:
            raise ConfigError("replay planner needs a fixture file: replay:<file>")
        try:
            backend = ReplayBackend.from_file(path)
        except BackendError as e:
            raise ConfigError(str(e)) from e
        return LLMPlanner(backend, max_reasks)

    raise ConfigError(f"Unknown planner '{choice}'; expected astar, dijkstra, llm or replay:<file>")
