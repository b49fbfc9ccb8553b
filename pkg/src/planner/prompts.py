"""Prompt assembly for the LLM planner"""

from typing import List, Tuple

from ..terrain.generator import OBSTACLE_HEIGHT
from ..terrain.models import FeatureKind, TerrainGrid, TerrainUnitSpec, UnitKind

WALL_CODE = "W"

SYSTEM_PROMPT = (
    "You are the high-level planner of a legged robot. You read a coarse terrain "
    "map and answer with a sequence of terrain-unit waypoints."
)

PROMPT_SECTIONS = (
    "## Task",
    "## Coarse map",
    "## Robot capabilities",
    "## Terrain descriptions",
    "## Waypoint definition",
)

TERRAIN_DESCRIPTIONS = """\
F  flat ground, always traversable. The number is 0.00.
H  hurdle, a thin bar across the unit. The number is its height in meters.
B  box, a raised platform in the middle of the unit. The number is its height in meters.
G  gap, a deep trench across the middle of the unit. The number is its width in meters.
O  tall obstacles inside the unit that must be walked around. The number is their height in meters.
W  unit crossed by a wall. Walls cannot be crossed."""

WAYPOINT_DEFINITION = """\
A waypoint is a terrain unit written as (row,col); the robot walks to the center
of each unit in order and waits there briefly. Consecutive waypoints should be
neighbouring units. The first waypoint is the start unit and the last one the goal
unit. Think step by step, then give the final answer in exactly this format:

```waypoints
(row,col)
(row,col)
```"""


def unit_value(unit: TerrainUnitSpec) -> float:
    """Number shown next to a unit's kind code"""
    if unit.kind in (UnitKind.HURDLE, UnitKind.BOX, UnitKind.GAP):
        return unit.param
    if unit.kind == UnitKind.OBSTACLE:
        return OBSTACLE_HEIGHT
    return 0.0


def render_unit_grid(grid: TerrainGrid) -> List[str]:
    """
    One line per unit row, row 0 first; cells are a kind code plus a value.

    Units crossed by a wall footprint render as W with the wall height.
    """
    walls = [fp for fp in grid.obstacles if fp.kind == FeatureKind.WALL]
    lines = []
    for row in grid.units:
        cells = []
        for unit in row:
            crossing = [w for w in walls if w.overlaps(*unit.bounds)]
            if crossing:
                cells.append(f"{WALL_CODE}{max(w.height for w in crossing):.2f}")
            else:
                cells.append(f"{unit.kind.code}{unit_value(unit):.2f}")
        lines.append(" ".join(cells))
    return lines


def build_llm_prompt(
    task: str,
    unit_grid: TerrainGrid,
    caps_text: str,
    start: Tuple[int, int],
    goal: Tuple[int, int]
) -> str:
    """
    Assemble the planner prompt from its five sections in fixed order.

    Args:
        task: Task description
        unit_grid: Terrain rendered as the coarse map
        caps_text: Locomotion capability text, included verbatim
        start: Start unit (row, col)
        goal: Goal unit (row, col)

    Returns:
        Prompt text, identical for identical inputs
    """
    if not unit_grid.units:
        raise ValueError("Cannot build a prompt for an empty unit grid")

    map_lines = render_unit_grid(unit_grid)
    sections = [
        f"{PROMPT_SECTIONS[0]}\n{task}\n"
        f"Start unit: ({start[0]},{start[1]}). Goal unit: ({goal[0]},{goal[1]}).",
        f"{PROMPT_SECTIONS[1]}\n"
        f"{unit_grid.rows} rows x {unit_grid.cols} columns of "
        f"{unit_grid.unit_size:g} m x {unit_grid.unit_width:g} m units. "
        f"Row 0 is printed first, column 0 is leftmost.\n"
        "```map\n" + "\n".join(map_lines) + "\n```",
        f"{PROMPT_SECTIONS[2]}\n{caps_text}",
        f"{PROMPT_SECTIONS[3]}\n{TERRAIN_DESCRIPTIONS}",
        f"{PROMPT_SECTIONS[4]}\n{WAYPOINT_DEFINITION}",
    ]
    return "\n\n".join(sections) + "\n"
