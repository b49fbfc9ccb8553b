"""YAML run configuration: scenario, reward, robot, task and planner blocks"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import ConfigError
from ..reward.models import Phase, RewardConfig
from ..robot.models import ControllerGains, RobotCapabilities
from ..terrain.generator import (
    WALL_HEIGHT,
    build_custom_grid,
    generate_arena,
    generate_wp_fixed,
    generate_wp_random,
    wall,
)
from ..terrain.models import TerrainGrid, UnitKind

TaskName = Literal["single", "omni", "tracking"]
Location = Tuple[Union[str, int], ...]


class ScenarioConfig(BaseModel):
    """Terrain to generate; which fields apply depends on kind"""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["wp_fixed", "wp_random", "arena", "custom"] = "wp_fixed"
    # tracks for wp_fixed, areas for wp_random, units per side for arena
    rows: int = Field(1, ge=1)
    cols: int = Field(1, ge=1)
    kinds: List[UnitKind] = Field(default_factory=lambda: [UnitKind.FLAT])
    layout: Optional[List[List[UnitKind]]] = None
    difficulty: Optional[float] = Field(None, ge=0, le=1)
    unit_size: float = Field(2.0, gt=0)
    resolution: float = Field(0.05, gt=0)
    track_width: Optional[float] = Field(None, gt=0)
    obstacles_per_unit: Tuple[int, int] = (1, 3)
    walls: List[List[float]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_kind_fields(self) -> "ScenarioConfig":
        if self.kind == "custom" and not self.layout:
            raise ValueError("custom scenarios need a layout of unit kinds")
        if self.walls and self.kind != "custom":
            raise ValueError("walls are only supported for custom scenarios")
        for w in self.walls:
            if len(w) not in (4, 5):
                raise ValueError(f"wall needs [x_min, y_min, x_max, y_max] and an optional height, got {w}")
        if self.kind == "arena" and self.rows % 2 == 0:
            raise ValueError("arena needs an odd number of units per side")
        lo, hi = self.obstacles_per_unit
        if lo < 0 or hi < lo:
            raise ValueError(f"obstacles_per_unit must be an increasing non-negative range, got {self.obstacles_per_unit}")
        return self


class TaskConfig(BaseModel):
    """Evaluation and navigation parameters"""
    model_config = ConfigDict(extra="forbid")

    name: TaskName = "single"
    robots: int = Field(18, ge=1)
    time_limit: Optional[float] = Field(None, gt=0)
    with_obstacles: bool = False
    parallel: int = Field(1, ge=1)
    dt: float = Field(0.02, gt=0)
    phase: Phase = Phase.FINETUNE
    test_kind: UnitKind = UnitKind.FLAT
    difficulty: float = Field(0.5, ge=0, le=1)
    heatmap_cell: float = Field(0.25, gt=0)
    start: Optional[Tuple[float, float]] = None
    goal: Optional[Tuple[float, float]] = None


class PlannerConfig(BaseModel):
    """High-level planner choice and path segmentation"""
    model_config = ConfigDict(extra="forbid")

    planner: str = "astar"
    heuristic: Literal["euclidean", "octile"] = "octile"
    cell_size: float = Field(0.5, gt=0)
    min_gap: float = Field(0.5, gt=0)
    max_gap: float = Field(1.0, gt=0)
    max_reasks: int = Field(2, ge=0)
    inflation_margin: float = Field(0.5, ge=0)

    @model_validator(mode="after")
    def _check_gaps(self) -> "PlannerConfig":
        if self.min_gap > self.max_gap:
            raise ValueError(f"min_gap {self.min_gap} exceeds max_gap {self.max_gap}")
        return self


class RunConfig(BaseModel):
    """One reproducible run"""
    model_config = ConfigDict(extra="forbid")

    seed: int = 0
    output_dir: Optional[Path] = None
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    reward: RewardConfig = Field(default_factory=RewardConfig)
    capabilities: RobotCapabilities = Field(default_factory=RobotCapabilities)
    controller: ControllerGains = Field(default_factory=ControllerGains)
    task: TaskConfig = Field(default_factory=TaskConfig)
    planner: PlannerConfig = Field(default_factory=PlannerConfig)


def _node_line(root: Optional[yaml.Node], loc: Location) -> Optional[int]:
    """1-based line of the deepest YAML node along a validation location"""
    if root is None:
        return None
    node = root
    for part in loc:
        child = None
        if isinstance(node, yaml.MappingNode):
            child = next((v for k, v in node.value if k.value == str(part)), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(part, int) and part < len(node.value):
            child = node.value[part]
        if child is None:
            break
        node = child
    return node.start_mark.line + 1


def format_validation_error(error: ValidationError, root: Optional[yaml.Node] = None, source: str = "") -> str:
    """One line per failing field: dotted path, YAML line when known, message"""
    lines = []
    for item in error.errors():
        loc = tuple(item["loc"])
        path = ".".join(str(p) for p in loc) or "<root>"
        line = _node_line(root, loc)
        where = f"{source}:{line}: " if line is not None else ""
        lines.append(f"{where}{path}: {item['msg']}")
    return "\n".join(lines)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Load and validate a YAML run configuration.

    Args:
        path: YAML file

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: Missing file, malformed YAML or invalid fields, with
            dotted paths and line numbers in the message
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    text = path.read_text()

    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"{path}:{mark.line + 1}: " if mark is not None else f"{path}: "
        raise ConfigError(f"{where}malformed YAML: {getattr(e, 'problem', e)}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping, got {type(data).__name__}")

    try:
        config = RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid config {path}:\n{format_validation_error(e, root, str(path))}") from e
    logger.info(f"Loaded run config {path} (seed={config.seed})")
    return config


def apply_overrides(config: RunConfig, overrides: Dict[str, Any]) -> RunConfig:
    """
    Set dotted-path fields and re-validate; None values are skipped.

    Args:
        config: Base configuration
        overrides: e.g. {"seed": 3, "task.robots": 4}

    Returns:
        New validated RunConfig

    Raises:
        ConfigError: Unknown path or invalid value
    """
    data = config.model_dump(mode="json")
    applied = {}
    for dotted, value in overrides.items():
        if value is None:
            continue
        *parents, leaf = dotted.split(".")
        target = data
        for key in parents:
            if not isinstance(target.get(key), dict):
                raise ConfigError(f"Unknown config section in override: {dotted}")
            target = target[key]
        target[leaf] = value
        applied[dotted] = value

    try:
        updated = RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid override:\n{format_validation_error(e)}") from e
    if applied:
        logger.debug(f"Config overrides: {applied}")
    return updated


def dump_run_config(config: RunConfig, path: Union[str, Path]) -> Path:
    """Write the resolved config as YAML that load_run_config reads back"""
    path = Path(path)
    path.write_text(yaml.safe_dump(config.model_dump(mode="json"), sort_keys=False))
    return path


def _walls(walls: Sequence[Sequence[float]]):
    return [wall(*w[:4], height=w[4] if len(w) == 5 else WALL_HEIGHT) for w in walls]


def build_terrain(config: RunConfig, with_obstacles: Optional[bool] = None) -> TerrainGrid:
    """
    Generate the terrain a run configuration describes.

    Args:
        config: Run configuration
        with_obstacles: Arena obstacle variant, defaults to task.with_obstacles

    Returns:
        TerrainGrid
    """
    s = config.scenario
    obstacles = config.task.with_obstacles if with_obstacles is None else with_obstacles
    if s.kind == "wp_fixed":
        return generate_wp_fixed(
            s.rows, s.cols, s.kinds, s.difficulty, seed=config.seed,
            unit_size=s.unit_size, track_width=s.track_width, resolution=s.resolution,
            obstacles_per_unit=s.obstacles_per_unit,
        )
    if s.kind == "wp_random":
        return generate_wp_random(
            s.rows, s.cols, s.difficulty if s.difficulty is not None else 1.0, seed=config.seed,
            capabilities=config.capabilities, unit_size=s.unit_size, resolution=s.resolution,
            obstacles_per_unit=s.obstacles_per_unit,
        )
    if s.kind == "arena":
        return generate_arena(
            units_per_side=s.rows, unit_size=s.unit_size, kinds=s.kinds,
            difficulty=s.difficulty if s.difficulty is not None else 1.0,
            with_obstacles=obstacles, seed=config.seed, resolution=s.resolution,
        )
    return build_custom_grid(
        s.layout, unit_size=s.unit_size,
        difficulty=s.difficulty if s.difficulty is not None else 1.0,
        extra_features=_walls(s.walls), seed=config.seed, resolution=s.resolution,
        obstacles_per_unit=s.obstacles_per_unit,
    )
