"""Procedural terrain: scenarios, heightfields, scandots, occupancy and reachability"""

from .models import (
    FeatureKind,
    Footprint,
    PARAM_RANGES,
    Scandots,
    Scenario,
    TerrainGrid,
    TerrainUnitSpec,
    UnitKind,
    unit_param,
)
from .generator import (
    build_custom_grid,
    generate_arena,
    generate_wp_fixed,
    generate_wp_random,
    rasterize,
    wall,
)
from .scandots import default_pattern, sample_scandots
from .inflation import inflate_obstacles
from .occupancy import OccupancyMap, load_occupancy, save_occupancy, to_occupancy
from .reachability import Reachability, validate_reachability
from .io import (
    load_heightfield_binary,
    load_heightfield_text,
    save_heightfield_binary,
    save_heightfield_text,
)

__all__ = [
    "FeatureKind",
    "Footprint",
    "PARAM_RANGES",
    "Scandots",
    "Scenario",
    "TerrainGrid",
    "TerrainUnitSpec",
    "UnitKind",
    "unit_param",
    "build_custom_grid",
    "generate_arena",
    "generate_wp_fixed",
    "generate_wp_random",
    "rasterize",
    "wall",
    "default_pattern",
    "sample_scandots",
    "inflate_obstacles",
    "OccupancyMap",
    "load_occupancy",
    "save_occupancy",
    "to_occupancy",
    "Reachability",
    "validate_reachability",
    "load_heightfield_binary",
    "load_heightfield_text",
    "save_heightfield_binary",
    "save_heightfield_text",
]
