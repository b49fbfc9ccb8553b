"""Tests for terrain generation, scandots, inflation, occupancy and reachability"""

import numpy as np
import pytest

from src.errors import TerrainGenerationError
from src.geometry import Pose
from src.robot import RobotCapabilities
from src.terrain import (
    PARAM_RANGES,
    FeatureKind,
    Footprint,
    OccupancyMap,
    Scenario,
    UnitKind,
    build_custom_grid,
    default_pattern,
    generate_arena,
    generate_wp_fixed,
    generate_wp_random,
    inflate_obstacles,
    load_heightfield_binary,
    load_heightfield_text,
    load_occupancy,
    sample_scandots,
    save_heightfield_binary,
    save_heightfield_text,
    save_occupancy,
    to_occupancy,
    unit_param,
    validate_reachability,
    wall,
)

KINDS = [UnitKind.HURDLE, UnitKind.BOX, UnitKind.GAP, UnitKind.OBSTACLE]


class TestUnitParam:
    """Test curriculum parameter ranges"""

    def test_endpoints(self):
        """Difficulty 0 and 1 map to the range ends"""
        for scenario in (Scenario.WP_FIXED, Scenario.WP_RANDOM):
            for kind, (lo, hi) in PARAM_RANGES[scenario].items():
                assert unit_param(kind, scenario, 0.0) == pytest.approx(lo)
                assert unit_param(kind, scenario, 1.0) == pytest.approx(hi)

    def test_out_of_range_difficulty(self):
        """Difficulty outside [0, 1] is rejected"""
        with pytest.raises(ValueError):
            unit_param(UnitKind.GAP, Scenario.WP_RANDOM, 1.5)

    def test_monotone_and_bounded(self):
        """Params grow with difficulty and never leave the table ranges"""
        rng = np.random.default_rng(0)
        for scenario in (Scenario.WP_FIXED, Scenario.WP_RANDOM):
            for kind in KINDS:
                lo, hi = PARAM_RANGES[scenario][kind]
                levels = np.sort(rng.uniform(0.0, 1.0, 10_000))
                params = np.array([unit_param(kind, scenario, d) for d in levels])
                assert np.all(np.diff(params) >= 0.0)
                assert params.min() >= lo - 1e-12
                assert params.max() <= hi + 1e-12

    def test_random_ceilings(self):
        """WP-Random ceilings match the default capabilities"""
        caps = RobotCapabilities()
        assert unit_param(UnitKind.GAP, Scenario.WP_RANDOM, 1.0) == pytest.approx(0.35)
        assert unit_param(UnitKind.BOX, Scenario.WP_RANDOM, 1.0) == pytest.approx(0.35)
        assert unit_param(UnitKind.GAP, Scenario.WP_RANDOM, 1.0) <= caps.max_gap
        assert unit_param(UnitKind.BOX, Scenario.WP_RANDOM, 1.0) <= caps.max_climb


class TestGenerateWpFixed:
    """Test the WP-Fixed generator"""

    def test_paper_layout_counts(self):
        """10 x 40 tracks give 400 tracks and 2400 units"""
        grid = generate_wp_fixed(10, 40, KINDS, seed=0, resolution=0.1)
        assert grid.track_count == 400
        assert grid.rows * grid.cols == 2400

    def test_tracks_are_homogeneous(self):
        """Every unit of a track has the track's kind"""
        grid = generate_wp_fixed(2, 4, KINDS, seed=1)
        for r in range(2):
            for t in range(4):
                kinds = {u.kind for u in grid.track_units(r, t)}
                assert len(kinds) == 1
                assert kinds.pop() == KINDS[(r * 4 + t) % len(KINDS)]

    def test_row_curriculum(self):
        """Without explicit difficulty, row i gets i / (rows - 1)"""
        grid = generate_wp_fixed(3, 1, UnitKind.GAP, seed=0)
        levels = [grid.unit(r, 0).difficulty for r in range(3)]
        assert levels == pytest.approx([0.0, 0.5, 1.0])

    def test_difficulty_length_mismatch(self):
        """Per-row difficulties must match the row count"""
        with pytest.raises(ValueError):
            generate_wp_fixed(2, 1, UnitKind.BOX, difficulty=[0.1, 0.2, 0.3])

    def test_invalid_difficulty(self):
        """Difficulty above 1 is rejected"""
        with pytest.raises(ValueError):
            generate_wp_fixed(1, 1, UnitKind.BOX, difficulty=1.5)

    def test_deterministic(self):
        """Same seed, same terrain"""
        a = generate_wp_fixed(2, 2, KINDS, seed=7)
        b = generate_wp_fixed(2, 2, KINDS, seed=7)
        assert np.array_equal(a.heightfield, b.heightfield)
        assert a.obstacles == b.obstacles

    def test_tiling(self):
        """Unit extents tile the grid without overlap"""
        grid = generate_wp_fixed(2, 2, KINDS, seed=0, track_width=1.5)
        size_x, size_y = grid.size
        total = sum(u.extent[0] * u.extent[1] for u in grid.iter_units())
        assert total == pytest.approx(size_x * size_y)
        units = list(grid.iter_units())
        for i, a in enumerate(units):
            for b in units[i + 1:]:
                ax0, ay0, ax1, ay1 = a.bounds
                bx0, by0, bx1, by1 = b.bounds
                overlap_x = min(ax1, bx1) - max(ax0, bx0)
                overlap_y = min(ay1, by1) - max(ay0, by0)
                assert overlap_x <= 1e-9 or overlap_y <= 1e-9

    def test_heightfield_matches_features(self):
        """Raster heights equal the closed-form height at cell centers"""
        grid = generate_wp_fixed(1, 4, KINDS, difficulty=0.5, seed=3)
        r = grid.resolution
        ny, nx = grid.heightfield.shape
        for i in range(0, ny, 7):
            for j in range(0, nx, 5):
                x, y = (j + 0.5) * r, (i + 0.5) * r
                assert grid.heightfield[i, j] == pytest.approx(grid.height_at(x, y))


class TestGenerateWpRandom:
    """Test the WP-Random generator"""

    def test_start_rows_flat(self):
        """Row 0 of every area is flat"""
        grid = generate_wp_random(2, 1, difficulty=0.8, seed=0)
        for area_row in range(2):
            row = grid.units[area_row * 6]
            assert all(u.kind == UnitKind.FLAT for u in row)

    def test_ceilings_at_full_difficulty(self):
        """Difficulty 1 yields gap widths and box heights of 0.35 m"""
        grid = generate_wp_random(2, 2, difficulty=1.0, seed=2)
        for unit in grid.iter_units():
            if unit.kind in (UnitKind.GAP, UnitKind.BOX):
                assert unit.param == pytest.approx(0.35)

    def test_reachable(self):
        """Generated areas pass the reachability check"""
        grid = generate_wp_random(1, 2, difficulty=1.0, seed=4)
        assert validate_reachability(grid, RobotCapabilities()).ok

    def test_deterministic(self):
        """Same seed, same terrain"""
        a = generate_wp_random(1, 1, difficulty=0.5, seed=11)
        b = generate_wp_random(1, 1, difficulty=0.5, seed=11)
        assert np.array_equal(a.heightfield, b.heightfield)
        assert [u.kind for u in a.iter_units()] == [u.kind for u in b.iter_units()]

    def test_impossible_capabilities(self):
        """No arrangement survives when nothing can be crossed"""
        caps = RobotCapabilities(max_gap=0.01, max_climb=0.01, max_hurdle=0.01, body_radius=2.0)
        with pytest.raises(TerrainGenerationError):
            generate_wp_random(1, 1, difficulty=1.0, seed=0, capabilities=caps, max_retries=2)


class TestReachability:
    """Test unit-level reachability"""

    def test_all_flat(self, flat_grid, caps):
        """An all-flat grid is reachable"""
        report = validate_reachability(flat_grid, caps)
        assert report.ok
        assert report.unreachable == ()

    def test_gap_row_cuts(self, caps):
        """A full row of wide gaps cuts the grid and is named"""
        kinds = [[UnitKind.FLAT] * 2, [UnitKind.GAP] * 2, [UnitKind.FLAT] * 2]
        params = [[None, None], [0.5, 0.5], [None, None]]
        grid = build_custom_grid(kinds, params=params)
        ok, diagnostic = validate_reachability(grid, caps)[:2]
        assert not ok
        assert "row 1" in diagnostic

    def test_narrow_gap_row_passes(self, caps):
        """Gaps within max_gap do not cut the grid"""
        kinds = [[UnitKind.FLAT] * 2, [UnitKind.GAP] * 2, [UnitKind.FLAT] * 2]
        params = [[None, None], [0.3, 0.3], [None, None]]
        assert validate_reachability(build_custom_grid(kinds, params=params), caps).ok

    def test_wall_across_grid(self, caps):
        """A wall spanning the width leaves the far side unreachable"""
        kinds = [[UnitKind.FLAT] * 2 for _ in range(3)]
        grid = build_custom_grid(kinds, extra_features=[wall(0.0, 2.9, 4.0, 3.1)])
        report = validate_reachability(grid, caps)
        assert not report.ok
        assert (2, 0) in report.unreachable

    def test_blocked_center_with_free_lanes(self, caps):
        """A unit whose center is covered stays reachable through the lanes beside it"""
        kinds = [[UnitKind.FLAT] for _ in range(3)]
        block = Footprint(0.8, 2.8, 1.2, 3.2, 1.0, FeatureKind.OBSTACLE)
        grid = build_custom_grid(kinds, extra_features=[block])
        assert block.contains(1.0, 3.0)
        assert validate_reachability(grid, caps).ok


class TestScandots:
    """Test heightfield sampling around the robot"""

    def test_default_pattern_shape(self):
        """17 x 11 offsets"""
        assert default_pattern().shape == (187, 2)

    def test_flat_terrain(self, flat_grid):
        """Flat terrain samples zero everywhere"""
        dots = sample_scandots(flat_grid, Pose(3.0, 3.0, 0.7))
        assert np.allclose(dots.samples, 0.0)

    def test_single_box_oracle(self):
        """Samples at cell centers equal the closed-form box height"""
        grid = build_custom_grid([[UnitKind.BOX]], unit_size=2.0, params=[[0.3]])
        pose = Pose(1.025, 1.025, 0.0)
        offsets = np.array([(k * 0.05, m * 0.05) for k in range(-15, 16) for m in (-3, 0, 3)])
        dots = sample_scandots(grid, pose, offsets)
        expected = [grid.height_at(pose.x + dx, pose.y + dy) for dx, dy in offsets]
        assert dots.samples == pytest.approx(expected, abs=1e-9)
        assert dots.samples.max() == pytest.approx(0.3)
        assert dots.samples.min() == pytest.approx(0.0, abs=1e-9)

    def test_rotated_pattern(self):
        """Offsets rotate with the yaw"""
        grid = build_custom_grid([[UnitKind.BOX]], unit_size=2.0, params=[[0.3]])
        # facing +y, a forward offset stays inside the box band along y
        dots = sample_scandots(grid, Pose(1.025, 1.025, np.pi / 2), np.array([[0.6, 0.0]]))
        assert dots.samples[0] == pytest.approx(0.3, abs=1e-9)

    def test_outside_pose(self, flat_grid):
        """Poses outside the terrain are rejected"""
        with pytest.raises(ValueError):
            sample_scandots(flat_grid, Pose(-1.0, 1.0, 0.0))


class TestInflation:
    """Test virtual obstacle inflation"""

    @pytest.fixture
    def obstacle_grid(self):
        return build_custom_grid([[UnitKind.OBSTACLE, UnitKind.FLAT]], params=[[0.5, None]], seed=5)

    def test_zero_margin_identity(self, obstacle_grid):
        """Margin 0 leaves footprints as they are"""
        inflated = inflate_obstacles(obstacle_grid, 0.0)
        assert [f.bounds for f in inflated.virtual_obstacles] == [f.bounds for f in obstacle_grid.obstacles]

    def test_true_geometry_unchanged(self, obstacle_grid):
        """Heightfield and true footprints are shared, not grown"""
        inflated = inflate_obstacles(obstacle_grid, 0.3)
        assert inflated.obstacles == obstacle_grid.obstacles
        assert np.array_equal(inflated.heightfield, obstacle_grid.heightfield)

    def test_monotone_and_clipped(self, obstacle_grid):
        """Larger margins contain smaller ones and stay inside the unit"""
        small = inflate_obstacles(obstacle_grid, 0.1).virtual_obstacles
        large = inflate_obstacles(obstacle_grid, 0.4).virtual_obstacles
        unit = Footprint(*obstacle_grid.unit(0, 0).bounds, height=0.0, kind=FeatureKind.WALL)
        for a, b in zip(small, large):
            assert b.encloses(a)
            assert unit.encloses(b)

    def test_negative_margin(self, obstacle_grid):
        """Negative margins are rejected"""
        with pytest.raises(ValueError):
            inflate_obstacles(obstacle_grid, -0.1)


class TestOccupancy:
    """Test occupancy maps"""

    def test_wall_only_ignores_hurdles(self):
        """Hurdles never mark cells on a wall-only map"""
        grid = build_custom_grid([[UnitKind.HURDLE, UnitKind.HURDLE]], params=[[0.4, 0.4]])
        occupancy = to_occupancy(grid, 0.5, wall_only=True)
        assert not occupancy.cells.any()

    def test_height_threshold(self):
        """Without wall_only, tall footprints are marked"""
        grid = build_custom_grid([[UnitKind.OBSTACLE]], params=[[0.5]], seed=0)
        occupancy = to_occupancy(grid, 0.5, wall_only=False)
        assert occupancy.cells.any()

    def test_wall_cells(self):
        """A wall marks exactly the cells it overlaps"""
        grid = build_custom_grid(
            [[UnitKind.FLAT] * 2 for _ in range(2)], extra_features=[wall(1.0, 0.0, 1.5, 4.0)]
        )
        occupancy = to_occupancy(grid, 0.5)
        assert occupancy.shape == (8, 8)
        assert occupancy.cells[:, 2].all()
        assert occupancy.cells.sum() == 8

    def test_ascii_file(self, tmp_path):
        """ASCII header and body survive a save/load"""
        cells = np.zeros((3, 4), dtype=bool)
        cells[1, 2] = True
        path = save_occupancy(OccupancyMap(cells=cells, cell_size=0.5), tmp_path / "occ.txt")
        text = path.read_text().splitlines()
        assert text[0] == "occupancy 3 4 0.5"
        assert text[2] == "..#."
        assert np.array_equal(load_occupancy(path).cells, cells)

    def test_bad_header(self):
        """Malformed headers are rejected"""
        with pytest.raises(ValueError):
            OccupancyMap.from_ascii("grid 1 1 0.5\n.\n")


class TestHeightfieldIO:
    """Test heightfield files"""

    def test_binary_layout(self, tmp_path):
        """16-byte header followed by float32 heights"""
        heights = np.arange(12, dtype=float).reshape(3, 4) / 10.0
        path = save_heightfield_binary(heights, 0.05, tmp_path / "hf.bin")
        raw = path.read_bytes()
        assert raw[:4] == b"HFLD"
        assert len(raw) == 16 + 12 * 4
        loaded, resolution = load_heightfield_binary(path)
        assert loaded.shape == (3, 4)
        assert np.allclose(loaded, heights)
        assert resolution == pytest.approx(0.05)

    def test_bad_magic(self, tmp_path):
        """Files without the magic are rejected"""
        path = tmp_path / "bad.bin"
        path.write_bytes(b"XXXX" + bytes(12))
        with pytest.raises(ValueError):
            load_heightfield_binary(path)

    def test_truncated(self, tmp_path):
        """Missing heights are reported"""
        path = save_heightfield_binary(np.zeros((2, 2)), 0.05, tmp_path / "hf.bin")
        path.write_bytes(path.read_bytes()[:-4])
        with pytest.raises(ValueError):
            load_heightfield_binary(path)

    def test_text(self, tmp_path):
        """Text export keeps four decimals"""
        heights = np.array([[0.0, 0.12345], [-1.0, 0.3]])
        path = save_heightfield_text(heights, tmp_path / "hf.txt")
        assert np.allclose(load_heightfield_text(path), np.round(heights, 4))


class TestArena:
    """Test the omni-traverse arena"""

    def test_flat_arena(self):
        """Default arena is 21 m square and featureless"""
        arena = generate_arena()
        assert arena.size == pytest.approx((21.0, 21.0))
        assert not arena.obstacles

    def test_center_flat_with_obstacles(self):
        """The center unit stays flat in the obstacle variant"""
        arena = generate_arena(with_obstacles=True, obstacle_fraction=1.0, seed=3)
        assert arena.unit(3, 3).kind == UnitKind.FLAT
        assert arena.kind_counts()[UnitKind.OBSTACLE] == 48

    def test_even_side_rejected(self):
        """An even arena has no center unit"""
        with pytest.raises(ValueError):
            generate_arena(units_per_side=6)
