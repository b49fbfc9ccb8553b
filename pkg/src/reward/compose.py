"""Weighted combination of the reward terms with stay gating"""

from typing import Callable, Sequence

from ..geometry import norm
from .models import Phase, RewardBreakdown, RewardConfig, RewardInputs
from .terms import cosine_similarity, reward_reach, reward_stay, reward_track, reward_yaw

RegularizationTerm = Callable[[RewardInputs], float]


def compose(
    inputs: RewardInputs,
    cfg: RewardConfig,
    phase: Phase = Phase.FINETUNE,
    regularizers: Sequence[RegularizationTerm] = ()
) -> RewardBreakdown:
    """
    Total reward for one step.

    Within d_t of the waypoint only the stay term is paid and every other
    term reports zero. Outside, the tracking term is the plain direction
    cosine in the pretrain phase and the speed-scaled form with the -1
    penalty in the finetune phase. User-supplied regularizers are added
    outside the gate only.

    Args:
        inputs: Per-step quantities
        cfg: Reward configuration
        phase: Pretrain or finetune
        regularizers: Extra callables returning already-weighted terms

    Returns:
        RewardBreakdown
    """
    weights = cfg.weights
    r_stay = reward_stay(inputs.q, inputs.w_rel, cfg)
    if norm(inputs.w_rel) < cfg.d_t:
        return RewardBreakdown(
            r_reach=0.0,
            r_stay=r_stay,
            r_track=0.0,
            r_yaw=0.0,
            stay_gate=True,
            total=weights.stay * r_stay,
        )

    r_reach = reward_reach(inputs.n_p, inputs.t, cfg)
    if Phase(phase) == Phase.PRETRAIN:
        r_track = cosine_similarity(inputs.v, inputs.w_rel)
    else:
        r_track = reward_track(inputs.v, inputs.w_rel, cfg)
    r_yaw = reward_yaw(inputs.yaw, inputs.target_bearing)
    regularization = float(sum(term(inputs) for term in regularizers))

    total = (
        weights.reach * r_reach
        + weights.stay * r_stay
        + weights.track * r_track
        + weights.yaw * r_yaw
        + regularization
    )
    return RewardBreakdown(
        r_reach=r_reach,
        r_stay=r_stay,
        r_track=r_track,
        r_yaw=r_yaw,
        stay_gate=False,
        total=total,
        regularization=regularization,
    )
