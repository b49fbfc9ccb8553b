"""Planar geometry helpers shared by terrain, waypoints and the robot model"""

import math
from typing import NamedTuple, Tuple

Vec2 = Tuple[float, float]

TWO_PI = 2.0 * math.pi


class Pose(NamedTuple):
    """World-frame planar pose; yaw positive counter-clockwise"""
    x: float
    y: float
    yaw: float = 0.0

    @property
    def position(self) -> Vec2:
        return (self.x, self.y)


def wrap_angle(angle: float) -> float:
    """Wrap an angle into (-pi, pi]"""
    wrapped = math.fmod(angle + math.pi, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    wrapped -= math.pi
    if wrapped <= -math.pi:
        return math.pi
    return wrapped


def rotate(vec: Vec2, angle: float) -> Vec2:
    """Rotate a vector counter-clockwise by angle"""
    c, s = math.cos(angle), math.sin(angle)
    return (c * vec[0] - s * vec[1], s * vec[0] + c * vec[1])


def norm(vec: Vec2) -> float:
    return math.hypot(vec[0], vec[1])


def distance(a: Vec2, b: Vec2) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])
