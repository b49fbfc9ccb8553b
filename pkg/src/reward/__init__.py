"""Waypoint-tracking reward suite"""

from .models import DEFAULT_Q, Phase, RewardBreakdown, RewardConfig, RewardInputs, RewardWeights
from .terms import cosine_similarity, reward_reach, reward_stay, reward_track, reward_yaw
from .compose import RegularizationTerm, compose

__all__ = [
    "DEFAULT_Q",
    "Phase",
    "RewardBreakdown",
    "RewardConfig",
    "RewardInputs",
    "RewardWeights",
    "cosine_similarity",
    "reward_reach",
    "reward_stay",
    "reward_track",
    "reward_yaw",
    "RegularizationTerm",
    "compose",
]
