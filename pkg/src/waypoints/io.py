"""Waypoint list files: one `x y [row col]` line per waypoint"""

from pathlib import Path
from typing import List, Sequence, Union

from loguru import logger

from .models import Waypoint


def save_waypoints(waypoints: Sequence[Waypoint], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for wp in waypoints:
        line = f"{wp.position[0]:.6f} {wp.position[1]:.6f}"
        if wp.unit_index is not None:
            line += f" {wp.unit_index[0]} {wp.unit_index[1]}"
        lines.append(line)
    path.write_text("\n".join(lines) + ("\n" if lines else ""))
    logger.debug(f"Wrote {len(lines)} waypoints to {path}")
    return path


def load_waypoints(path: Union[str, Path]) -> List[Waypoint]:
    """
    Read a waypoint list file; blank lines and `#` comments are skipped.

    Raises:
        ValueError: On a line that is neither `x y` nor `x y row col`
    """
    waypoints: List[Waypoint] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 4):
            raise ValueError(f"{path}:{lineno}: expected 'x y [row col]', got {raw!r}")
        position = (float(parts[0]), float(parts[1]))
        unit_index = (int(parts[2]), int(parts[3])) if len(parts) == 4 else None
        waypoints.append(Waypoint(position=position, id=len(waypoints), unit_index=unit_index))
    return waypoints
