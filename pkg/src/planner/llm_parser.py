"""Parsing and formatting of terrain-unit waypoint answers"""

import re
from typing import List, Optional, Sequence, Tuple

from ..errors import IndexOutOfRange, ParseError
from ..waypoints.models import Waypoint

BLOCK_RE = re.compile(r"```waypoints[ \t]*\r?\n(.*?)```", re.DOTALL)
PAIR_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
# what may separate pairs on a line
SEPARATOR_RE = re.compile(r"^[\s,;>\-]*$")


def extract_unit_indices(response: str) -> List[Tuple[int, int]]:
    """
    Ordered (row, col) pairs from the last ```waypoints block of an answer.

    Raises:
        ParseError: No block, an empty block, or a line with stray text
    """
    blocks = BLOCK_RE.findall(response or "")
    if not blocks:
        raise ParseError("Answer has no ```waypoints block")

    pairs: List[Tuple[int, int]] = []
    for lineno, line in enumerate(blocks[-1].splitlines(), start=1):
        if not line.strip():
            continue
        if not SEPARATOR_RE.match(PAIR_RE.sub("", line)):
            raise ParseError(f"Line {lineno} of the waypoints block is not a list of (row,col) pairs: {line.strip()!r}")
        pairs.extend((int(r), int(c)) for r, c in PAIR_RE.findall(line))
    if not pairs:
        raise ParseError("The waypoints block is empty")
    return pairs


def parse_llm_waypoints(
    response: str,
    rows: int,
    cols: int,
    unit_size: float,
    unit_width: Optional[float] = None
) -> List[Waypoint]:
    """
    Convert an LLM answer into unit-center waypoints.

    Args:
        response: Raw answer text
        rows: Unit rows of the grid
        cols: Unit columns of the grid
        unit_size: Unit extent along x (m)
        unit_width: Unit extent along y (m), defaults to unit_size

    Returns:
        Waypoints at ((col + 0.5) * unit_size, (row + 0.5) * unit_width)

    Raises:
        ParseError: Malformed or empty answer block
        IndexOutOfRange: A pair outside the grid
    """
    width = unit_width or unit_size
    waypoints = []
    for k, (row, col) in enumerate(extract_unit_indices(response)):
        if not (0 <= row < rows and 0 <= col < cols):
            raise IndexOutOfRange((row, col), rows, cols)
        position = ((col + 0.5) * unit_size, (row + 0.5) * width)
        waypoints.append(Waypoint(position=position, id=k, unit_index=(row, col)))
    return waypoints


def format_llm_waypoints(indices: Sequence[Tuple[int, int]]) -> str:
    """Answer block accepted by parse_llm_waypoints"""
    body = "\n".join(f"({row},{col})" for row, col in indices)
    return f"```waypoints\n{body}\n```"
