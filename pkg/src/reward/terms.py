"""Individual reward terms"""

import math

import numpy as np

from ..geometry import Vec2, norm, wrap_angle
from .models import RewardConfig

DEGENERATE_NORM = 1e-9


def cosine_similarity(a: Vec2, b: Vec2) -> float:
    """Cosine of the angle between two vectors; 0 when either is (near) zero"""
    na, nb = norm(a), norm(b)
    if na < DEGENERATE_NORM or nb < DEGENERATE_NORM:
        return 0.0
    return (a[0] * b[0] + a[1] * b[1]) / (na * nb)


def reward_reach(n_p: int, t: float, cfg: RewardConfig) -> float:
    """
    Waypoints reached per unit episode time.

    Args:
        n_p: Waypoints reached so far
        t: Time since the episode began (s)
        cfg: Reward configuration (epsilon)

    Returns:
        n_p / (t + epsilon)
    """
    if n_p < 0 or t < 0:
        raise ValueError(f"Need n_p >= 0 and t >= 0, got n_p={n_p}, t={t}")
    return n_p / (t + cfg.epsilon)


def reward_stay(q: np.ndarray, w_rel: Vec2, cfg: RewardConfig) -> float:
    """
    Posture reward paid only within d_t of the waypoint.

    Returns:
        exp(-|q_default - q|) if |w_rel| < d_t else 0, with the L1 or L2
        norm per cfg.joint_norm
    """
    q = np.asarray(q, dtype=float)
    q_default = np.asarray(cfg.q_default, dtype=float)
    if q.shape != q_default.shape:
        raise ValueError(f"Joint vector shape {q.shape} does not match q_default {q_default.shape}")
    if not norm(w_rel) < cfg.d_t:
        return 0.0
    order = 1 if cfg.joint_norm == "l1" else 2
    deviation = float(np.linalg.norm(q_default - q, ord=order))
    return math.exp(-deviation)


def reward_track(v: Vec2, w_rel: Vec2, cfg: RewardConfig) -> float:
    """
    Velocity tracking toward the waypoint.

    Returns:
        -1 when cos(v, w_rel) < cosine_floor, else cos(v, w_rel) * |v|
    """
    c = cosine_similarity(v, w_rel)
    if c < cfg.cosine_floor:
        return -1.0
    return c * norm(v)


def reward_yaw(yaw: float, target_bearing: float) -> float:
    """Heading alignment: exp(-|wrap(target_bearing - yaw)|)"""
    return math.exp(-abs(wrap_angle(target_bearing - yaw)))
