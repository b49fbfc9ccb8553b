"""Tests for waypoint presetting, sampling, progression and files"""

import math

import numpy as np
import pytest

from src.errors import NoCandidate
from src.geometry import Pose, distance, wrap_angle
from src.terrain import FeatureKind, UnitKind, build_custom_grid, generate_wp_fixed, generate_wp_random, wall
from src.waypoints import (
    RandomWaypointSource,
    RaySource,
    SequenceSource,
    Waypoint,
    is_accessible,
    load_waypoints,
    preset_fixed_waypoints,
    sample_random_waypoint,
    save_waypoints,
    start_progress,
    to_command,
    update_progress,
)

TRACK_KINDS = [UnitKind.FLAT, UnitKind.GAP, UnitKind.HURDLE, UnitKind.BOX, UnitKind.OBSTACLE]


class TestPresetWaypoints:
    """Test WP-Fixed waypoint presetting"""

    @pytest.fixture
    def grid(self):
        return generate_wp_fixed(1, 5, TRACK_KINDS, difficulty=0.5, seed=2)

    def test_one_per_unit(self, grid):
        """Six waypoints per track with ids 0..5"""
        tracks = preset_fixed_waypoints(grid)
        assert len(tracks) == 5
        for track in tracks:
            assert [wp.id for wp in track] == list(range(6))

    def test_flat_and_box_centers(self, grid):
        """Flat and Box waypoints sit on unit centers"""
        tracks = preset_fixed_waypoints(grid)
        for t in (0, 3):
            for wp, unit in zip(tracks[t], grid.track_units(0, t)):
                assert wp.position == unit.center
                assert wp.unit_index == (unit.row, unit.col)

    def test_past_gaps_and_hurdles(self, grid):
        """Gap and Hurdle waypoints lie past the feature on the track axis"""
        tracks = preset_fixed_waypoints(grid)
        for t, kind in ((1, FeatureKind.GAP), (2, FeatureKind.HURDLE)):
            for wp, unit in zip(tracks[t], grid.track_units(0, t)):
                far = max(fp.x_max for fp in grid.obstacles if fp.unit == (unit.row, unit.col) and fp.kind == kind)
                assert wp.position[0] == pytest.approx(far + 0.5)
                assert wp.position[1] == pytest.approx(unit.center[1])
                assert grid.height_at(*wp.position) == 0.0

    def test_obstacle_lane_clear(self):
        """Obstacle waypoints stay out of the obstacles"""
        grid = generate_wp_fixed(1, 1, UnitKind.OBSTACLE, difficulty=0.0, seed=7, obstacles_per_unit=(1, 1))
        for wp in preset_fixed_waypoints(grid)[0]:
            assert not any(fp.contains_closed(*wp.position) for fp in grid.obstacles)

    def test_needs_wp_fixed(self, flat_grid):
        """Other scenarios are rejected"""
        with pytest.raises(ValueError):
            preset_fixed_waypoints(flat_grid)


class TestSampler:
    """Test dynamic waypoint candidates"""

    def test_cone_soundness_flat(self, flat_grid):
        """Every sample lies within unit_size and 90 degrees of the heading"""
        rng = np.random.default_rng(0)
        pose = Pose(4.0, 4.0, 0.3)
        for i in range(10_000):
            wp = sample_random_waypoint(flat_grid, pose, rng=rng, waypoint_id=i)
            d = distance(wp.position, pose.position)
            bearing = wrap_angle(math.atan2(wp.position[1] - pose.y, wp.position[0] - pose.x) - pose.yaw)
            assert d <= flat_grid.unit_size + 1e-12
            assert abs(bearing) <= math.pi / 2 + 1e-12

    def test_cone_soundness_wp_random(self):
        """Soundness holds on WP-Random terrain, and samples are accessible"""
        grid = generate_wp_random(1, 1, difficulty=1.0, seed=3)
        source = RandomWaypointSource(grid, np.random.default_rng(1))
        pose = Pose(5.0, 1.0, math.pi / 2)
        for i in range(10_000):
            wp = source.next_waypoint(pose, i)
            d = distance(wp.position, pose.position)
            bearing = wrap_angle(math.atan2(wp.position[1] - pose.y, wp.position[0] - pose.x) - pose.yaw)
            assert d <= grid.unit_size + 1e-12
            assert abs(bearing) <= math.pi / 2 + 1e-12
            assert is_accessible(grid, pose.position, wp.position)

    def test_zero_bearing_on_ray(self, flat_grid):
        """max_bearing 0 puts the waypoint on the yaw ray"""
        pose = Pose(2.0, 2.0, 0.8)
        rng = np.random.default_rng(5)
        for _ in range(100):
            wp = sample_random_waypoint(flat_grid, pose, max_bearing=0.0, rng=rng)
            angle = math.atan2(wp.position[1] - pose.y, wp.position[0] - pose.x)
            assert abs(wrap_angle(angle - pose.yaw)) <= 1e-9

    def test_bearing_limit(self, flat_grid):
        """Orientation thresholds above 90 degrees are rejected"""
        with pytest.raises(ValueError):
            sample_random_waypoint(flat_grid, Pose(2.0, 2.0, 0.0), max_bearing=math.pi)

    def test_enclosed_pose(self):
        """Walls closer than every candidate exhaust the sampler"""
        walls = [
            wall(1.6, 1.6, 2.4, 1.8),
            wall(1.6, 2.2, 2.4, 2.4),
            wall(1.6, 1.8, 1.8, 2.2),
            wall(2.2, 1.8, 2.4, 2.2),
        ]
        grid = build_custom_grid([[UnitKind.FLAT] * 2 for _ in range(2)], extra_features=walls)
        with pytest.raises(NoCandidate):
            sample_random_waypoint(grid, Pose(2.0, 2.0, 0.0), rng=np.random.default_rng(0), budget=64)

    def test_gap_not_accessible(self):
        """Points inside a trench are rejected"""
        grid = build_custom_grid([[UnitKind.GAP]], params=[[0.3]])
        assert not is_accessible(grid, (0.3, 1.0), (1.0, 1.0))
        assert is_accessible(grid, (0.3, 1.0), (1.5, 1.0))

    def test_outside_not_accessible(self, flat_grid):
        """Points off the terrain are rejected"""
        assert not is_accessible(flat_grid, (1.0, 1.0), (-0.5, 1.0))


class TestSources:
    """Test waypoint providers"""

    def test_sequence(self):
        """A sequence runs out after its last waypoint"""
        source = SequenceSource([Waypoint((1.0, 1.0), 0), Waypoint((2.0, 1.0), 1)])
        pose = Pose(0.0, 0.0)
        assert source.next_waypoint(pose, 1).position == (2.0, 1.0)
        assert source.next_waypoint(pose, 2) is None

    def test_ray(self):
        """Ray waypoints are spaced along the heading"""
        source = RaySource((10.5, 10.5), math.pi / 2, spacing=3.0, count=3)
        positions = [source.next_waypoint(Pose(0.0, 0.0), k).position for k in range(3)]
        assert positions == [pytest.approx((10.5, 10.5 + 3.0 * (k + 1))) for k in range(3)]
        assert source.next_waypoint(Pose(0.0, 0.0), 3) is None

    def test_random_limit(self, flat_grid):
        """A limited random source stops after its limit"""
        source = RandomWaypointSource(flat_grid, np.random.default_rng(0), limit=1)
        assert source.next_waypoint(Pose(4.0, 4.0), 0) is not None
        assert source.next_waypoint(Pose(4.0, 4.0), 1) is None


class TestProgress:
    """Test stay-then-advance progression"""

    @pytest.fixture
    def source(self):
        return SequenceSource([Waypoint((1.0, 0.0), 0), Waypoint((3.0, 0.0), 1)])

    def test_base_frame_command(self):
        """Commands are expressed in the base frame"""
        cmd = to_command(Waypoint((0.0, 1.0)), Pose(0.0, 0.0, math.pi / 2))
        assert cmd.w_rel == pytest.approx((1.0, 0.0), abs=1e-12)
        assert cmd.distance == pytest.approx(1.0)
        assert cmd.bearing == pytest.approx(0.0, abs=1e-12)

    def test_command_rigid_invariance(self):
        """Moving waypoint and pose by the same rigid transform leaves the command unchanged"""
        rng = np.random.default_rng(17)

        def moved(point, phi, shift):
            c, s = math.cos(phi), math.sin(phi)
            return (c * point[0] - s * point[1] + shift[0], s * point[0] + c * point[1] + shift[1])

        for _ in range(2_000):
            pose = Pose(*rng.uniform(-20.0, 20.0, size=2), rng.uniform(-math.pi, math.pi))
            target = tuple(rng.uniform(-20.0, 20.0, size=2))
            phi = rng.uniform(-math.pi, math.pi)
            shift = tuple(rng.uniform(-50.0, 50.0, size=2))

            base = to_command(Waypoint(target), pose)
            x, y = moved((pose.x, pose.y), phi, shift)
            other = to_command(Waypoint(moved(target, phi, shift)), Pose(x, y, pose.yaw + phi))

            assert other.w_rel == pytest.approx(base.w_rel, abs=1e-9)
            assert other.distance == pytest.approx(base.distance, abs=1e-9)
            assert wrap_angle(other.bearing - base.bearing) == pytest.approx(0.0, abs=1e-9)

    def test_dwell_advances(self, source):
        """100 steps of 0.02 s inside the radius advance the waypoint"""
        state = start_progress(source, Pose(1.0, 0.0))
        pose = Pose(1.1, 0.0)
        for _ in range(99):
            state, cmd = update_progress(state, pose, 0.02, source)
            assert state.active_index == 0
        state, cmd = update_progress(state, pose, 0.02, source)
        assert state.active_index == 1
        assert state.reached_count == 1
        assert cmd.distance == pytest.approx(1.9)

    def test_pass_through_resets(self, source):
        """Leaving the radius before the stay resets the dwell timer"""
        state = start_progress(source, Pose(0.0, 0.0))
        for _ in range(50):
            state, _ = update_progress(state, Pose(1.0, 0.0), 0.02, source)
        state, _ = update_progress(state, Pose(2.0, 0.0), 0.02, source)
        assert state.time_at_waypoint == 0.0
        for _ in range(99):
            state, _ = update_progress(state, Pose(1.0, 0.0), 0.02, source)
        assert state.reached_count == 0

    def test_radius_is_strict(self, source):
        """Exactly on the reach radius does not count as inside"""
        state = start_progress(source, Pose(0.0, 0.0), reach_radius=0.5)
        state, _ = update_progress(state, Pose(1.5, 0.0), 0.02, source)
        assert state.time_at_waypoint == 0.0

    def test_terminal_after_last(self, source):
        """Holding the last waypoint ends the sequence"""
        state = start_progress(source, Pose(0.0, 0.0), stay_duration=0.1)
        for pose in (Pose(1.0, 0.0), Pose(3.0, 0.0)):
            for _ in range(5):
                state, cmd = update_progress(state, pose, 0.02, source)
        assert state.terminal
        assert state.reached_count == 2
        assert cmd is None
        assert state.active.position == (3.0, 0.0)

    def test_bad_dt(self, source):
        """Non-positive dt is rejected"""
        state = start_progress(source, Pose(0.0, 0.0))
        with pytest.raises(ValueError):
            update_progress(state, Pose(0.0, 0.0), 0.0, source)


class TestWaypointFiles:
    """Test waypoint list files"""

    def test_save_and_load(self, tmp_path):
        """Positions and unit indices come back"""
        waypoints = [Waypoint((1.0, 2.5), 0, (1, 0)), Waypoint((3.25, 4.0), 1)]
        path = save_waypoints(waypoints, tmp_path / "waypoints.txt")
        assert path.read_text().splitlines()[0] == "1.000000 2.500000 1 0"
        loaded = load_waypoints(path)
        assert [wp.position for wp in loaded] == [(1.0, 2.5), (3.25, 4.0)]
        assert loaded[0].unit_index == (1, 0)
        assert loaded[1].unit_index is None

    def test_comments_skipped(self, tmp_path):
        """Comments and blank lines are ignored"""
        path = tmp_path / "wp.txt"
        path.write_text("# planned\n\n1 2  # first\n3 4\n")
        assert len(load_waypoints(path)) == 2

    def test_bad_line(self, tmp_path):
        """Malformed lines name the file position"""
        path = tmp_path / "wp.txt"
        path.write_text("1 2\n1 2 3\n")
        with pytest.raises(ValueError, match=":2:"):
            load_waypoints(path)
