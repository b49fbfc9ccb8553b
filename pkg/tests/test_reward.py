"""Tests for the waypoint-tracking reward suite"""

import math

import numpy as np
import pytest

from src.reward import (
    DEFAULT_Q,
    Phase,
    RewardConfig,
    RewardInputs,
    RewardWeights,
    compose,
    cosine_similarity,
    reward_reach,
    reward_stay,
    reward_track,
    reward_yaw,
)


def _reference_total(inputs, cfg, phase):
    """Straight numpy rendition of the composed reward"""
    w = np.asarray(inputs.w_rel, dtype=float)
    v = np.asarray(inputs.v, dtype=float)
    q_dev = np.sum(np.abs(np.asarray(cfg.q_default) - inputs.q))
    stay = math.exp(-q_dev) if np.linalg.norm(w) < cfg.d_t else 0.0
    if np.linalg.norm(w) < cfg.d_t:
        return cfg.weights.stay * stay

    reach = inputs.n_p / (inputs.t + cfg.epsilon)
    speed = np.linalg.norm(v)
    cos = float(v @ w / (speed * np.linalg.norm(w))) if speed > 1e-9 else 0.0
    if phase == Phase.PRETRAIN:
        track = cos
    else:
        track = -1.0 if cos < cfg.cosine_floor else cos * speed
    heading_error = np.angle(np.exp(1j * (inputs.target_bearing - inputs.yaw)))
    yaw = math.exp(-abs(heading_error))
    weights = cfg.weights
    return weights.reach * reach + weights.stay * stay + weights.track * track + weights.yaw * yaw


def _random_inputs(rng, max_offset=3.0):
    return RewardInputs(
        q=np.asarray(DEFAULT_Q) + rng.normal(0.0, 0.2, size=12),
        w_rel=tuple(rng.uniform(-max_offset, max_offset, size=2)),
        v=tuple(rng.uniform(-1.5, 1.5, size=2)),
        yaw=float(rng.uniform(-math.pi, math.pi)),
        target_bearing=float(rng.uniform(-math.pi, math.pi)),
        n_p=int(rng.integers(0, 20)),
        t=float(rng.uniform(0.0, 120.0)),
    )


class TestRewardTerms:
    """Test the individual terms"""

    def test_reach(self):
        """n_p / (t + epsilon)"""
        cfg = RewardConfig(epsilon=0.01)
        assert reward_reach(3, 1.99, cfg) == pytest.approx(1.5)
        assert reward_reach(0, 0.0, cfg) == 0.0

    def test_reach_rejects_negative(self):
        """Negative counts or times are errors"""
        with pytest.raises(ValueError):
            reward_reach(-1, 1.0, RewardConfig())
        with pytest.raises(ValueError):
            reward_reach(1, -0.5, RewardConfig())

    def test_stay_at_default_posture(self):
        """Standing still at the default posture pays exactly 1"""
        cfg = RewardConfig()
        assert reward_stay(np.asarray(DEFAULT_Q), (0.1, 0.0), cfg) == 1.0

    def test_stay_outside_gate(self):
        """No stay reward at or beyond d_t"""
        cfg = RewardConfig(d_t=0.4)
        assert reward_stay(np.asarray(DEFAULT_Q), (0.4, 0.0), cfg) == 0.0

    def test_stay_l2(self):
        """The L2 joint norm is selectable"""
        cfg = RewardConfig(joint_norm="l2")
        q = np.asarray(DEFAULT_Q, dtype=float)
        q[0] += 0.3
        q[1] += 0.4
        assert reward_stay(q, (0.0, 0.0), cfg) == pytest.approx(math.exp(-0.5))

    def test_stay_shape_mismatch(self):
        """Joint vectors must match q_default"""
        with pytest.raises(ValueError):
            reward_stay(np.zeros(6), (0.0, 0.0), RewardConfig())

    def test_cosine_degenerate(self):
        """Zero vectors have cosine 0"""
        assert cosine_similarity((0.0, 0.0), (1.0, 0.0)) == 0.0

    def test_track_cosine_boundary(self):
        """The -1 penalty switches exactly at the cosine floor"""
        cfg = RewardConfig(cosine_floor=0.1)
        speed = 1.2
        for c, expected in ((0.1 + 1e-9, (0.1 + 1e-9) * speed), (0.1 - 1e-9, -1.0)):
            v = (speed * c, speed * math.sqrt(1.0 - c * c))
            assert reward_track(v, (2.0, 0.0), cfg) == pytest.approx(expected, rel=1e-9)

    def test_track_standing_penalized(self):
        """A zero velocity away from the waypoint pays -1"""
        assert reward_track((0.0, 0.0), (1.0, 1.0), RewardConfig()) == -1.0

    def test_yaw(self):
        """Heading error wraps around pi"""
        assert reward_yaw(0.0, 0.0) == 1.0
        assert reward_yaw(math.pi - 0.1, -math.pi + 0.1) == pytest.approx(math.exp(-0.2))


class TestCompose:
    """Test the composed reward"""

    @pytest.mark.parametrize("phase", [Phase.FINETUNE, Phase.PRETRAIN])
    def test_matches_reference(self, phase):
        """10^4 random inputs agree with a numpy rendition"""
        rng = np.random.default_rng(11)
        cfg = RewardConfig(weights=RewardWeights(reach=0.7, stay=1.3, track=2.0, yaw=0.4))
        for _ in range(10_000):
            inputs = _random_inputs(rng)
            total = compose(inputs, cfg, phase).total
            assert total == pytest.approx(_reference_total(inputs, cfg, phase), rel=1e-12, abs=1e-12)

    def test_stay_gating(self):
        """Inside d_t only the stay term is paid, outside it is zero"""
        rng = np.random.default_rng(3)
        cfg = RewardConfig()
        for _ in range(1_000):
            inputs = _random_inputs(rng, max_offset=0.6)
            out = compose(inputs, cfg)
            if math.hypot(*inputs.w_rel) < cfg.d_t:
                assert out.stay_gate
                assert (out.r_reach, out.r_track, out.r_yaw) == (0.0, 0.0, 0.0)
                assert out.total == cfg.weights.stay * out.r_stay
            else:
                assert not out.stay_gate
                assert out.r_stay == 0.0

    def test_pretrain_drops_penalty(self):
        """Pretraining pays the plain cosine instead of -1"""
        inputs = RewardInputs(
            q=np.asarray(DEFAULT_Q), w_rel=(2.0, 0.0), v=(-1.0, 0.0),
            yaw=0.0, target_bearing=0.0, n_p=0, t=1.0,
        )
        assert compose(inputs, RewardConfig(), Phase.PRETRAIN).r_track == pytest.approx(-1.0)
        moving_sideways = RewardInputs(
            q=np.asarray(DEFAULT_Q), w_rel=(2.0, 0.0), v=(0.0, 1.0),
            yaw=0.0, target_bearing=0.0, n_p=0, t=1.0,
        )
        assert compose(moving_sideways, RewardConfig(), Phase.PRETRAIN).r_track == 0.0
        assert compose(moving_sideways, RewardConfig(), Phase.FINETUNE).r_track == -1.0

    def test_regularizers_outside_gate(self):
        """Extra terms add to the total only outside the stay gate"""
        cfg = RewardConfig()
        penalty = lambda inputs: -0.25  # noqa: E731
        far = RewardInputs(
            q=np.asarray(DEFAULT_Q), w_rel=(2.0, 0.0), v=(1.0, 0.0),
            yaw=0.0, target_bearing=0.0, n_p=1, t=2.0,
        )
        base = compose(far, cfg).total
        out = compose(far, cfg, regularizers=[penalty])
        assert out.regularization == -0.25
        assert out.total == pytest.approx(base - 0.25)

        near = RewardInputs(
            q=np.asarray(DEFAULT_Q), w_rel=(0.1, 0.0), v=(0.0, 0.0),
            yaw=0.0, target_bearing=0.0, n_p=1, t=2.0,
        )
        assert compose(near, cfg, regularizers=[penalty]).total == cfg.weights.stay

    def test_breakdown_row(self):
        """Per-step rows carry every term and the gate flag"""
        inputs = RewardInputs(
            q=np.asarray(DEFAULT_Q), w_rel=(0.1, 0.0), v=(0.0, 0.0),
            yaw=0.0, target_bearing=0.0, n_p=0, t=0.0,
        )
        row = compose(inputs, RewardConfig()).to_row(7)
        assert row["step"] == 7
        assert row["gate"] == 1
        assert row["total"] == 1.0


class TestRewardConfig:
    """Test reward configuration validation"""

    def test_rejects_unknown_keys(self):
        """Unknown fields are refused"""
        with pytest.raises(ValueError):
            RewardConfig(d_target=0.4)

    def test_rejects_non_positive_radius(self):
        """d_t must be positive"""
        with pytest.raises(ValueError):
            RewardConfig(d_t=0.0)

    def test_rejects_infinite_weight(self):
        """Weights must be finite"""
        with pytest.raises(ValueError):
            RewardWeights(track=float("inf"))
