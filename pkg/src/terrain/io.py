"""Heightfield export/import in plain-text and binary form"""

from pathlib import Path
from typing import Tuple, Union

import numpy as np

HEIGHTFIELD_MAGIC = b"HFLD"

# 16-byte header: magic, rows, cols, resolution
HEADER_DTYPE = np.dtype([
    ("magic", "S4"),
    ("rows", "<u4"),
    ("cols", "<u4"),
    ("resolution", "<f4"),
])


def save_heightfield_text(heightfield: np.ndarray, path: Union[str, Path]) -> Path:
    path = Path(path)
    np.savetxt(path, heightfield, fmt="%.4f")
    return path


def load_heightfield_text(path: Union[str, Path]) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, dtype=float))


def save_heightfield_binary(
    heightfield: np.ndarray,
    resolution: float,
    path: Union[str, Path]
) -> Path:
    """Write the 16-byte header followed by float32 row-major heights"""
    path = Path(path)
    rows, cols = heightfield.shape
    header = np.array([(HEIGHTFIELD_MAGIC, rows, cols, resolution)], dtype=HEADER_DTYPE)
    with open(path, "wb") as fh:
        header.tofile(fh)
        np.ascontiguousarray(heightfield, dtype="<f4").tofile(fh)
    return path


def load_heightfield_binary(path: Union[str, Path]) -> Tuple[np.ndarray, float]:
    """
    Read a binary heightfield.

    Returns:
        (heights as float32 array, resolution)
    """
    with open(path, "rb") as fh:
        header = np.fromfile(fh, dtype=HEADER_DTYPE, count=1)
        if len(header) != 1 or header["magic"][0] != HEIGHTFIELD_MAGIC:
            raise ValueError(f"{path} is not a heightfield file")
        rows, cols = int(header["rows"][0]), int(header["cols"][0])
        data = np.fromfile(fh, dtype="<f4", count=rows * cols)
    if data.size != rows * cols:
        raise ValueError(f"{path} is truncated: expected {rows * cols} heights, got {data.size}")
    return data.reshape(rows, cols), float(header["resolution"][0])
