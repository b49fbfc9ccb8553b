"""Tests for the command-line entry point"""

import csv
import json
from unittest.mock import patch

import pytest

from src.config import Settings
from src.main import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, build_parser, main, replay_metrics

ROW_3 = "    - [flat, flat, flat]\n"


def _config(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text)
    return path


def _run_dir(root, command):
    dirs = sorted(root.glob(f"{command}_*"))
    assert len(dirs) == 1, dirs
    return dirs[0]


@pytest.fixture
def offline_settings(tmp_path):
    """Settings with no LLM endpoint, isolated from any .env file"""
    settings = Settings(openai_api_key=None, openai_base_url=None, runs_dir=tmp_path / "runs", _env_file=None)
    with patch("src.main.get_settings", return_value=settings):
        yield settings


class TestParser:
    """Test argument parsing"""

    def test_eval_flags(self):
        """Eval takes a task and optional overrides"""
        args = build_parser().parse_args(["eval", "omni", "-c", "x.yaml", "--robots", "4", "--with-obstacles"])
        assert args.task == "omni"
        assert args.robots == 4
        assert args.with_obstacles is True

    def test_with_obstacles_unset(self):
        """Leaving the flag out keeps the config value"""
        args = build_parser().parse_args(["eval", "single", "-c", "x.yaml"])
        assert args.with_obstacles is None

    def test_unknown_task(self):
        """Unknown tasks are usage errors"""
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["eval", "sprint", "-c", "x.yaml"])
        assert exc.value.code == 2


class TestCommands:
    """Test each command end to end on small configurations"""

    def test_generate(self, tmp_path, offline_settings):
        """Terrain artifacts, preset waypoints and a summary are written"""
        path = _config(tmp_path, (
            "seed: 2\n"
            "scenario:\n  kind: wp_fixed\n  cols: 2\n  kinds: [gap, box]\n  resolution: 0.1\n"
        ))
        assert main(["generate", "-c", str(path), "--output-dir", str(tmp_path / "out")]) == EXIT_OK

        run_dir = _run_dir(tmp_path / "out", "generate")
        assert run_dir.name.endswith("_seed2")
        for name in ("heightfield.txt", "heightfield.bin", "occupancy.txt", "config.yaml", "navigation.log"):
            assert (run_dir / name).exists(), name
        assert len((run_dir / "waypoints.txt").read_text().splitlines()) == 12
        summary = json.loads((run_dir / "run.json").read_text())["summary"]
        assert summary["tracks"] == 2
        assert summary["size_m"] == [24.0, 2.0]
        assert summary["kinds"] == {"box": 6, "gap": 6}

    def test_seed_override(self, tmp_path, offline_settings):
        """--seed replaces the config seed"""
        path = _config(tmp_path, "scenario:\n  kind: wp_fixed\n  resolution: 0.1\n")
        assert main(["generate", "-c", str(path), "--seed", "7", "--output-dir", str(tmp_path)]) == EXIT_OK
        assert _run_dir(tmp_path, "generate").name.endswith("_seed7")

    def test_missing_config(self, tmp_path, offline_settings):
        """A missing config file is a usage error"""
        assert main(["generate", "-c", str(tmp_path / "absent.yaml")]) == EXIT_USAGE

    def test_invalid_config(self, tmp_path, offline_settings, capsys):
        """Validation errors are reported with the field and exit 2"""
        path = _config(tmp_path, "scenario:\n  difficulty: 1.5\n")
        assert main(["generate", "-c", str(path)]) == EXIT_USAGE
        assert "scenario.difficulty" in capsys.readouterr().err

    def test_navigate_needs_endpoints(self, tmp_path, offline_settings):
        """navigate without start and goal is a usage error"""
        path = _config(tmp_path, "scenario:\n  kind: custom\n  layout:\n" + ROW_3)
        assert main(["navigate", "-c", str(path), "--output-dir", str(tmp_path)]) == EXIT_USAGE

    def test_navigate_llm_unconfigured(self, tmp_path, offline_settings):
        """The llm planner without an endpoint is a usage error"""
        path = _config(tmp_path, "scenario:\n  kind: custom\n  layout:\n" + ROW_3)
        argv = [
            "navigate", "-c", str(path), "--output-dir", str(tmp_path),
            "--start", "1", "1", "--goal", "5", "1", "--planner", "llm",
        ]
        assert main(argv) == EXIT_USAGE

    def test_navigate_replay(self, tmp_path, offline_settings, fixtures_dir):
        """A replayed LLM answer drives a full hierarchical episode"""
        path = _config(tmp_path, "scenario:\n  kind: custom\n  layout:\n" + ROW_3)
        argv = [
            "navigate", "-c", str(path), "--output-dir", str(tmp_path / "out"),
            "--start", "1", "1", "--goal", "5", "1",
            "--planner", f"replay:{fixtures_dir / 'llm_straight.json'}",
        ]
        assert main(argv) == EXIT_OK

        run_dir = _run_dir(tmp_path / "out", "navigate")
        assert (run_dir / "llm_prompt.txt").exists()
        assert (run_dir / "trajectory_0.csv").exists()
        assert len((run_dir / "waypoints.txt").read_text().splitlines()) == 3
        with open(run_dir / "results.csv") as f:
            row = next(csv.DictReader(f))
        assert row["task"] == "hierarchical"
        assert row["SR"] == "1.00"

    def test_navigate_no_path(self, tmp_path, offline_settings):
        """A wall closing off the goal fails planning with exit 1"""
        path = _config(tmp_path, (
            "scenario:\n  kind: custom\n  layout:\n" + ROW_3 +
            "  walls:\n    - [2.9, 0.0, 3.1, 2.0]\n"
            "task:\n  start: [1.0, 1.0]\n  goal: [5.0, 1.0]\n"
        ))
        assert main(["navigate", "-c", str(path), "--output-dir", str(tmp_path)]) == EXIT_INTERNAL
        metadata = json.loads((_run_dir(tmp_path, "navigate") / "run.json").read_text())
        assert "No path" in metadata["error"]

    def test_tracking_needs_wp_random(self, tmp_path, offline_settings):
        """The tracking task refuses other scenarios"""
        path = _config(tmp_path, "scenario:\n  kind: wp_fixed\n  resolution: 0.1\n")
        assert main(["eval", "tracking", "-c", str(path), "--output-dir", str(tmp_path)]) == EXIT_USAGE

    def test_eval_omni_and_replay_metrics(self, tmp_path, offline_settings):
        """Metrics recomputed from the written trajectories match the results table"""
        path = _config(tmp_path, "scenario:\n  kind: arena\n  rows: 7\n  unit_size: 3.0\n  resolution: 0.1\n")
        argv = ["eval", "omni", "-c", str(path), "--robots", "4", "--output-dir", str(tmp_path / "out")]
        assert main(argv) == EXIT_OK

        run_dir = _run_dir(tmp_path / "out", "eval")
        for name in ("results.csv", "heatmap.txt", "heatmap.png", "run.json", "trajectory_3.csv", "rewards_0.csv"):
            assert (run_dir / name).exists(), name
        with open(run_dir / "results.csv") as f:
            written = next(csv.DictReader(f))
        assert written["SR"] == "1.00"
        assert replay_metrics(run_dir) == written
        assert main(["replay-metrics", str(run_dir)]) == EXIT_OK

    def test_replay_missing_run(self, tmp_path, offline_settings):
        """Replaying a directory without a run is a usage error"""
        assert main(["replay-metrics", str(tmp_path)]) == EXIT_USAGE


class TestReproducibility:
    """Test that a fixed seed gives byte-identical artifacts"""

    @staticmethod
    def _bytes(run_dir, names):
        return {name: (run_dir / name).read_bytes() for name in names}

    def test_generate_twice(self, tmp_path, offline_settings):
        """Two generate runs and a re-run from the config snapshot write the same files"""
        path = _config(tmp_path, (
            "seed: 11\n"
            "scenario:\n  kind: wp_fixed\n  rows: 2\n  cols: 2\n  kinds: [gap, box]\n  resolution: 0.1\n"
        ))
        names = ("heightfield.txt", "heightfield.bin", "occupancy.txt", "waypoints.txt", "run.json")
        for out in ("a", "b"):
            assert main(["generate", "-c", str(path), "--output-dir", str(tmp_path / out)]) == EXIT_OK
        first = _run_dir(tmp_path / "a", "generate")
        second = _run_dir(tmp_path / "b", "generate")
        assert self._bytes(first, names) == self._bytes(second, names)

        snapshot = first / "config.yaml"
        assert main(["generate", "-c", str(snapshot), "--output-dir", str(tmp_path / "c")]) == EXIT_OK
        assert self._bytes(_run_dir(tmp_path / "c", "generate"), names) == self._bytes(first, names)

    def test_eval_omni_twice(self, tmp_path, offline_settings):
        """Metrics, heatmaps and trajectories repeat exactly for the same seed"""
        path = _config(tmp_path, "seed: 3\nscenario:\n  kind: arena\n  rows: 7\n  unit_size: 3.0\n  resolution: 0.1\n")
        names = ("results.csv", "heatmap.txt", "heatmap.png", "trajectory_0.csv", "trajectory_3.csv", "rewards_2.csv")
        for out in ("a", "b"):
            argv = ["eval", "omni", "-c", str(path), "--robots", "4", "--output-dir", str(tmp_path / out)]
            assert main(argv) == EXIT_OK
        first = _run_dir(tmp_path / "a", "eval")
        second = _run_dir(tmp_path / "b", "eval")
        assert self._bytes(first, names) == self._bytes(second, names)
