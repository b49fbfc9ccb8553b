"""Configuration module"""

from .settings import Settings, get_settings
from .run_config import (
    PlannerConfig,
    RunConfig,
    ScenarioConfig,
    TaskConfig,
    apply_overrides,
    build_terrain,
    dump_run_config,
    format_validation_error,
    load_run_config,
)

__all__ = [
    "Settings",
    "get_settings",
    "PlannerConfig",
    "RunConfig",
    "ScenarioConfig",
    "TaskConfig",
    "apply_overrides",
    "build_terrain",
    "dump_run_config",
    "format_validation_error",
    "load_run_config",
]
