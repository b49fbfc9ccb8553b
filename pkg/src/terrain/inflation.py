"""Inflated virtual obstacles for the planner/policy-facing terrain view"""

from dataclasses import replace

from loguru import logger

from .models import TerrainGrid


def inflate_obstacles(grid: TerrainGrid, margin: float) -> TerrainGrid:
    """
    Grow every bypass-only footprint by a margin on all sides.

    Footprints are clipped to their unit extent (walls without a unit to
    the grid bounds). Only `virtual_obstacles` changes; the heightfield and
    the true footprints used for collision stay as they are. Overlapping
    results are kept as separate entries.

    Args:
        grid: Source terrain
        margin: Growth in meters, >= 0

    Returns:
        New TerrainGrid sharing the true geometry
    """
    if margin < 0:
        raise ValueError(f"Inflation margin must be >= 0, got {margin}")

    size_x, size_y = grid.size
    inflated = []
    for footprint in grid.obstacles:
        if not footprint.kind.must_bypass:
            inflated.append(footprint)
            continue
        if footprint.unit is not None:
            clip = grid.unit(*footprint.unit).bounds
        else:
            clip = (0.0, 0.0, size_x, size_y)
        inflated.append(footprint.grown(margin, clip))

    logger.debug(f"Inflated {len(inflated)} footprints by {margin:.3f} m")
    return replace(grid, virtual_obstacles=tuple(inflated))
