"""Scandot sampling of the heightfield around the robot"""

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from ..geometry import Pose
from .models import Scandots, TerrainGrid


def default_pattern() -> np.ndarray:
    """17 x 11 grid of base-frame offsets, 0.1 m apart, 1.6 m x 1.0 m"""
    xs = np.round(np.arange(-8, 9) * 0.1, 10)
    ys = np.round(np.arange(-5, 6) * 0.1, 10)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return np.stack([gx.ravel(), gy.ravel()], axis=1)


def _interpolator(grid: TerrainGrid) -> RegularGridInterpolator:
    ny, nx = grid.heightfield.shape
    r = grid.resolution
    ys = (np.arange(ny) + 0.5) * r
    xs = (np.arange(nx) + 0.5) * r
    return RegularGridInterpolator((ys, xs), grid.heightfield, method="linear")


def sample_scandots(grid: TerrainGrid, pose: Pose, pattern: np.ndarray = None) -> Scandots:
    """
    Bilinear heightfield lookups at pattern offsets rotated by the robot yaw.

    Offsets falling outside the heightfield clamp to the boundary height.

    Args:
        grid: Terrain
        pose: Robot pose (x, y, yaw); must lie inside the grid
        pattern: (N, 2) base-frame offsets, default_pattern() if None

    Returns:
        Scandots with one sample per offset
    """
    if not grid.in_bounds(pose.x, pose.y):
        raise ValueError(f"Pose ({pose.x:.3f}, {pose.y:.3f}) outside the terrain")
    offsets = default_pattern() if pattern is None else np.asarray(pattern, dtype=float).reshape(-1, 2)

    c, s = np.cos(pose.yaw), np.sin(pose.yaw)
    wx = pose.x + c * offsets[:, 0] - s * offsets[:, 1]
    wy = pose.y + s * offsets[:, 0] + c * offsets[:, 1]

    ny, nx = grid.heightfield.shape
    r = grid.resolution
    # clamp onto the span of cell centers
    wx = np.clip(wx, 0.5 * r, (nx - 0.5) * r)
    wy = np.clip(wy, 0.5 * r, (ny - 0.5) * r)

    samples = _interpolator(grid)(np.stack([wy, wx], axis=1))
    return Scandots(samples=samples, pattern=offsets)
