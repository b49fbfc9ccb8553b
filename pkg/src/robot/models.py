"""Robot model types: capabilities, kinematic state, actions and step outcomes"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..geometry import Pose, Vec2, norm

NUM_JOINTS = 12


class RobotCapabilities(BaseModel):
    """Locomotion limits gating terrain transitions; defaults are the WP-Random ceilings"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    max_climb: float = Field(0.35, gt=0, description="Highest box step the robot climbs (m)")
    max_hurdle: float = Field(0.30, gt=0, description="Highest hurdle the robot crosses (m)")
    max_gap: float = Field(0.35, gt=0, description="Widest gap the robot leaps, along motion (m)")
    body_radius: float = Field(0.3, gt=0, description="Clearance kept from bypass-only obstacles (m)")
    max_speed: float = Field(1.5, gt=0, description="Planar speed limit (m/s)")
    max_yaw_rate: float = Field(2.0, gt=0, description="Yaw-rate limit (rad/s)")
    min_leap_speed: float = Field(0.5, ge=0, description="Speed needed to leap a gap (m/s)")

    def describe(self) -> str:
        """Plain-language capability summary used in LLM prompts"""
        return (
            f"The robot can climb onto boxes up to {self.max_climb:.2f} m high, "
            f"step over hurdles up to {self.max_hurdle:.2f} m high and leap gaps up to "
            f"{self.max_gap:.2f} m wide. It cannot cross walls or tall obstacles and must "
            f"walk around them, keeping {self.body_radius:.2f} m of clearance. "
            f"Top speed is {self.max_speed:.1f} m/s."
        )


class ControllerGains(BaseModel):
    """Gains of the scripted waypoint-tracking controller"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    yaw_gain: float = Field(3.0, gt=0, description="k_omega, yaw-rate per radian of bearing (1/s)")
    slowdown_radius: float = Field(0.8, ge=0, description="Distance inside which speed scales down (m)")


class StepEvent(str, Enum):
    NONE = "none"
    COLLISION = "collision"
    FELL = "fell"
    REACHED_TERMINAL = "reached_terminal"

    @property
    def fatal(self) -> bool:
        return self in (StepEvent.COLLISION, StepEvent.FELL)


@dataclass(frozen=True)
class Action:
    """Body-frame planar velocity command and yaw rate"""
    vx: float = 0.0
    vy: float = 0.0
    yaw_rate: float = 0.0

    @property
    def speed(self) -> float:
        return norm((self.vx, self.vy))


def _default_q() -> np.ndarray:
    return np.zeros(NUM_JOINTS)


@dataclass(frozen=True, eq=False)
class RobotState:
    """Kinematic robot state; v is the world-frame planar velocity"""
    position: Vec2
    yaw: float = 0.0
    height: float = 0.0
    v: Vec2 = (0.0, 0.0)
    q: np.ndarray = field(default_factory=_default_q)
    t: float = 0.0
    alive: bool = True

    @property
    def pose(self) -> Pose:
        return Pose(self.position[0], self.position[1], self.yaw)

    @property
    def speed(self) -> float:
        return norm(self.v)

    def same_as(self, other: "RobotState") -> bool:
        return (
            self.position == other.position and self.yaw == other.yaw
            and self.height == other.height and self.v == other.v
            and self.t == other.t and self.alive == other.alive
            and np.array_equal(self.q, other.q)
        )


@dataclass(frozen=True)
class StepOutcome:
    """Result of one integration step"""
    state: RobotState
    event: StepEvent = StepEvent.NONE
    blocked: bool = False
    detail: Optional[str] = None
