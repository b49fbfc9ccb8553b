"""Tests for environment settings and YAML run configuration"""

from pathlib import Path

import pytest

from src.config import (
    RunConfig,
    Settings,
    apply_overrides,
    build_terrain,
    dump_run_config,
    load_run_config,
)
from src.errors import ConfigError
from src.terrain import FeatureKind, Scenario

CONFIGS = Path(__file__).parent.parent / "configs"


def _write(tmp_path, text, name="run.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestSettings:
    """Test environment settings"""

    def test_llm_configured(self):
        """Both endpoint and key are needed"""
        assert not Settings(openai_api_key="k", openai_base_url=None, _env_file=None).llm_configured()
        assert Settings(openai_api_key="k", openai_base_url="http://localhost", _env_file=None).llm_configured()

    def test_env_override(self, monkeypatch):
        """Environment variables feed the settings"""
        monkeypatch.setenv("LLM_MODEL", "local-model")
        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        settings = Settings(_env_file=None)
        assert settings.llm_model == "local-model"
        assert settings.log_level == "DEBUG"


class TestLoadRunConfig:
    """Test loading and validation with line-numbered diagnostics"""

    def test_defaults(self, tmp_path):
        """An empty file gives the defaults"""
        config = load_run_config(_write(tmp_path, ""))
        assert config == RunConfig()
        assert config.planner.max_gap == 1.0
        assert config.task.robots == 18

    def test_difficulty_out_of_range(self, tmp_path):
        """The failing field and its line are named"""
        path = _write(tmp_path, "seed: 1\nscenario:\n  kind: wp_fixed\n  difficulty: 1.5\n")
        with pytest.raises(ConfigError) as exc:
            load_run_config(path)
        assert f"{path}:4: scenario.difficulty" in str(exc.value)

    def test_unknown_key(self, tmp_path):
        """Unknown keys are refused with their line"""
        path = _write(tmp_path, "scenario:\n  kind: wp_fixed\n  bogus: 3\n")
        with pytest.raises(ConfigError) as exc:
            load_run_config(path)
        assert f"{path}:3: scenario.bogus" in str(exc.value)

    def test_malformed_yaml(self, tmp_path):
        """YAML syntax errors carry a line number"""
        path = _write(tmp_path, "seed: 1\nscenario: [unclosed\n")
        with pytest.raises(ConfigError, match="malformed YAML"):
            load_run_config(path)

    def test_top_level_mapping(self, tmp_path):
        """A list at the top level is refused"""
        with pytest.raises(ConfigError, match="mapping"):
            load_run_config(_write(tmp_path, "- 1\n- 2\n"))

    def test_missing_file(self, tmp_path):
        """Missing files are configuration errors"""
        with pytest.raises(ConfigError, match="not found"):
            load_run_config(tmp_path / "absent.yaml")

    @pytest.mark.parametrize("text", [
        "scenario:\n  kind: custom\n",
        "scenario:\n  kind: wp_fixed\n  walls: [[0, 0, 1, 1]]\n",
        "scenario:\n  kind: custom\n  layout: [[flat]]\n  walls: [[0, 0, 1]]\n",
        "scenario:\n  kind: arena\n  rows: 6\n",
        "planner:\n  min_gap: 2.0\n  max_gap: 1.0\n",
        "task:\n  name: sprint\n",
    ])
    def test_cross_field_checks(self, tmp_path, text):
        """Inconsistent blocks are refused"""
        with pytest.raises(ConfigError):
            load_run_config(_write(tmp_path, text))

    @pytest.mark.parametrize("name", ["wp_fixed.yaml", "wp_random.yaml", "arena.yaml", "single_traverse.yaml", "maze.yaml"])
    def test_shipped_configs(self, name):
        """Every shipped example config validates"""
        assert isinstance(load_run_config(CONFIGS / name), RunConfig)


class TestOverrides:
    """Test dotted-path overrides"""

    def test_apply(self):
        """Values are set and None is skipped"""
        config = apply_overrides(RunConfig(seed=3), {"task.robots": 4, "seed": None, "planner.planner": "dijkstra"})
        assert config.task.robots == 4
        assert config.seed == 3
        assert config.planner.planner == "dijkstra"

    def test_invalid_value(self):
        """Overrides are re-validated"""
        with pytest.raises(ConfigError):
            apply_overrides(RunConfig(), {"task.robots": 0})

    def test_unknown_section(self):
        """Paths through unknown sections are refused"""
        with pytest.raises(ConfigError):
            apply_overrides(RunConfig(), {"robot.speed": 1.0})


class TestDumpAndBuild:
    """Test config round trips and terrain construction"""

    def test_dump_reload(self, tmp_path):
        """A dumped config loads back unchanged"""
        config = apply_overrides(RunConfig(), {"seed": 9, "task.goal": [5.0, 1.0], "scenario.kinds": ["gap", "box"]})
        assert load_run_config(dump_run_config(config, tmp_path / "config.yaml")) == config

    def test_wp_fixed(self):
        """WP-Fixed scenarios become track grids"""
        config = apply_overrides(RunConfig(), {"scenario.cols": 2, "scenario.kinds": ["gap", "box"], "scenario.resolution": 0.1})
        grid = build_terrain(config)
        assert grid.scenario == Scenario.WP_FIXED
        assert grid.track_count == 2

    def test_custom_walls(self):
        """Custom layouts carry their walls"""
        config = load_run_config(CONFIGS / "maze.yaml")
        grid = build_terrain(config)
        assert grid.size == (10.0, 10.0)
        walls = [fp for fp in grid.obstacles if fp.kind == FeatureKind.WALL]
        assert len(walls) == 2
        assert walls[0].height == 1.0

    def test_sample_run(self, fixtures_dir):
        """The sample navigation config builds a walled corridor"""
        config = load_run_config(fixtures_dir / "sample_run.yaml")
        assert config.planner.planner == "dijkstra"
        assert config.task.goal == (5.0, 1.0)
        grid = build_terrain(config)
        assert grid.size == (6.0, 2.0)
        assert [fp.kind for fp in grid.obstacles].count(FeatureKind.WALL) == 1

    def test_arena(self):
        """Arena scenarios honour units per side and unit size"""
        grid = build_terrain(load_run_config(CONFIGS / "arena.yaml"))
        assert grid.size == (21.0, 21.0)
