"""Reward configuration, inputs and per-term breakdown"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..geometry import Vec2

# nominal standing posture (hip, thigh, calf) per leg, FL FR RL RR
DEFAULT_Q = [0.1, 0.8, -1.5, -0.1, 0.8, -1.5, 0.1, 1.0, -1.5, -0.1, 1.0, -1.5]


class Phase(str, Enum):
    """Training phase selecting the velocity-direction term"""
    PRETRAIN = "pretrain"
    FINETUNE = "finetune"


class RewardWeights(BaseModel):
    """Per-term weights; the defaults carry no special meaning"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    reach: float = 1.0
    stay: float = 1.0
    track: float = 1.5
    yaw: float = 0.5

    @field_validator("reach", "stay", "track", "yaw")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("weights must be finite")
        return value


class RewardConfig(BaseModel):
    """Parameters of the waypoint-tracking reward suite"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    epsilon: float = Field(0.01, gt=0, description="Small constant in the reach denominator (s)")
    d_t: float = Field(0.4, gt=0, description="Stay-gate radius around the active waypoint (m)")
    cosine_floor: float = Field(0.1, gt=-1, lt=1, description="Cosine below which tracking pays -1")
    weights: RewardWeights = Field(default_factory=RewardWeights)
    q_default: List[float] = Field(default_factory=lambda: list(DEFAULT_Q))
    joint_norm: Literal["l1", "l2"] = "l1"
    posture_gain: float = Field(0.5, ge=0, description="Joint deviation (L1, rad) at max speed")


@dataclass(frozen=True, eq=False)
class RewardInputs:
    """
    Per-step quantities the reward terms read.

    v and w_rel are both in the base frame; target_bearing is the world
    bearing from the robot to the active waypoint.
    """
    q: np.ndarray
    w_rel: Vec2
    v: Vec2
    yaw: float
    target_bearing: float
    n_p: int
    t: float


@dataclass(frozen=True)
class RewardBreakdown:
    """Per-term reward values for one step"""
    r_reach: float
    r_stay: float
    r_track: float
    r_yaw: float
    stay_gate: bool
    total: float
    regularization: float = 0.0

    def to_row(self, step: int) -> Dict[str, float]:
        """CSV row for the per-step reward log"""
        return {
            "step": step,
            "r_reach": self.r_reach,
            "r_stay": self.r_stay,
            "r_track": self.r_track,
            "r_yaw": self.r_yaw,
            "gate": int(self.stay_gate),
            "total": self.total,
        }
