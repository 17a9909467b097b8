"""
Test suite for the activecc command line.
"""

import json
import logging
import pytest
import tempfile
import shutil
from pathlib import Path
import sys

from click.testing import CliRunner

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from activecc.bench import read_csv
from activecc.cli import cli
from activecc.config.settings import get_settings, set_settings
from activecc.core.instance import load_ground_truth, load_instance


@pytest.fixture
def runner():
    yield CliRunner()
    set_settings(None)
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for CLI outputs."""
    path = tempfile.mkdtemp()
    yield Path(path)
    shutil.rmtree(path, ignore_errors=True)


def parse_report(text: str) -> dict:
    pairs = (line.split("=", 1) for line in text.splitlines() if "=" in line and " - " not in line)
    return {key: value for key, value in pairs}


class TestGen:
    """Test dataset generation."""

    def test_writes_instance_and_truth(self, runner, temp_dir):
        out = temp_dir / "graph.txt"
        result = runner.invoke(cli, ["gen", "--dataset", "cliques:4,3", "--seed", "1", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert load_instance(out).num_edges == 6 + 3
        assert load_ground_truth(Path(f"{out}.truth")).num_clusters == 2

    def test_dimacs_output(self, runner, temp_dir):
        out = temp_dir / "graph.col"
        result = runner.invoke(
            cli, ["gen", "--dataset", "cliques:3,3", "--format", "dimacs", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert out.read_text().startswith("p edge 6 6")

    def test_skew_truth_file(self, runner, temp_dir):
        out = temp_dir / "skew.txt"
        result = runner.invoke(cli, ["gen", "--dataset", "skew", "--out", str(out)])
        assert result.exit_code == 0, result.output
        truth = load_ground_truth(Path(f"{out}.truth"), 900)
        assert truth.n == 900
        assert truth.num_clusters == 30


class TestRun:
    """Test one-shot runs."""

    def test_kwik_report(self, runner):
        result = runner.invoke(cli, ["run", "--dataset", "cliques:5,4", "--algo", "kwik", "--seed", "3"])
        assert result.exit_code == 0, result.output
        report = parse_report(result.output)
        assert report["cost"] == "0"
        assert report["budget_exhausted"] == "false"
        assert report["seed"] == "3"

    def test_report_file(self, runner, temp_dir):
        out = temp_dir / "report.txt"
        result = runner.invoke(
            cli, ["run", "--dataset", "cliques:5,4", "--alpha", "0.5", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        report = parse_report(out.read_text())
        assert report["algorithm"] == "acc"
        assert int(report["queries"]) <= 9 * 3

    def test_budget_exhaustion_exits_cleanly(self, runner):
        result = runner.invoke(
            cli, ["run", "--dataset", "cliques:5,4", "--algo", "kwik", "--budget", "2"]
        )
        assert result.exit_code == 0, result.output
        assert "budget_exhausted=true" in result.output

    def test_generated_file_reports_recovery(self, runner, temp_dir):
        graph = temp_dir / "graph.txt"
        runner.invoke(cli, ["gen", "--dataset", "cliques:5,4,3", "--seed", "2", "--out", str(graph)])
        result = runner.invoke(cli, ["run", "--dataset", str(graph), "--algo", "kwik", "--seed", "1"])
        assert result.exit_code == 0, result.output
        report = parse_report(result.output)
        assert report["recovered_clusters"] == "3"
        assert [report[f"recovery_distance_{i}"] for i in range(3)] == ["0", "0", "0"]

    def test_explicit_truth_option(self, runner, temp_dir):
        graph = temp_dir / "graph.txt"
        runner.invoke(cli, ["gen", "--dataset", "cliques:5,4", "--out", str(graph)])
        labels = temp_dir / "labels.txt"
        Path(f"{graph}.truth").rename(labels)
        bare = parse_report(runner.invoke(cli, ["run", "--dataset", str(graph)]).output)
        assert "recovered_clusters" not in bare
        result = runner.invoke(cli, ["run", "--dataset", str(graph), "--truth", str(labels)])
        assert result.exit_code == 0, result.output
        assert "recovery_distance_1" in parse_report(result.output)

    def test_budget_report_carries_the_trace(self, runner):
        result = runner.invoke(
            cli, ["run", "--dataset", "cliques:20,20,20", "--algo", "kwik", "--budget", "100"]
        )
        assert result.exit_code == 0, result.output
        report = parse_report(result.output)
        assert report["stop_reason"] == "budget"
        assert int(report["rounds"]) >= 1

    def test_parameter_error(self, runner):
        result = runner.invoke(cli, ["run", "--dataset", "cliques:5,4", "--alpha", "2"])
        assert result.exit_code == 2
        assert "❌" in result.output

    def test_missing_dataset_file(self, runner, temp_dir):
        result = runner.invoke(cli, ["run", "--dataset", str(temp_dir / "missing.txt")])
        assert result.exit_code == 4

    def test_malformed_dataset_file(self, runner, temp_dir):
        path = temp_dir / "bad.txt"
        path.write_text("n 3\n0 1 +\n0 1 -\n")
        result = runner.invoke(cli, ["run", "--dataset", str(path)])
        assert result.exit_code == 2


class TestSweep:
    """Test sweeps from the command line."""

    def test_repeated_sweeps_are_byte_identical(self, runner, temp_dir):
        args = ["sweep", "--dataset", "cliques:6,4", "--eta", "0,0.5", "--alpha", "0.5,1",
                "--reps", "3", "--seed", "5"]
        first, second = temp_dir / "a.csv", temp_dir / "b.csv"
        assert runner.invoke(cli, args + ["--out", str(first)]).exit_code == 0
        assert runner.invoke(cli, args + ["--out", str(second)]).exit_code == 0
        assert first.read_bytes() == second.read_bytes()
        assert len(first.read_text().splitlines()) == 1 + 4

    def test_ingested_edge_list(self, runner, temp_dir):
        graph = temp_dir / "graph.txt"
        runner.invoke(cli, ["gen", "--dataset", "cliques:5,5", "--out", str(graph)])
        out = temp_dir / "tradeoff.csv"
        result = runner.invoke(
            cli, ["sweep", "--dataset", str(graph), "--eta", "0", "--alpha", "0.5", "--reps", "2",
                  "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert out.read_text().splitlines()[1].startswith("graph,")

    def test_invalid_grid(self, runner, temp_dir):
        result = runner.invoke(cli, ["sweep", "--alpha", "1.5", "--out", str(temp_dir / "x.csv")])
        assert result.exit_code == 2


class TestOptAndVc:
    """Test the exact verbs."""

    def test_opt(self, runner):
        result = runner.invoke(cli, ["opt", "--dataset", "cliques:3,3"])
        assert result.exit_code == 0, result.output
        report = parse_report(result.output)
        assert report["opt"] == "0"
        assert report["bad_triangles"] == "0"

    def test_opt_capacity(self, runner):
        result = runner.invoke(cli, ["opt", "--dataset", "skew"])
        assert result.exit_code == 3

    def test_vc_check(self, runner):
        result = runner.invoke(cli, ["vc-check", "4"])
        assert result.exit_code == 0, result.output
        assert "vc_dimension=3" in result.output

    def test_vc_check_bounds(self, runner):
        assert runner.invoke(cli, ["vc-check", "8"]).exit_code == 3
        assert runner.invoke(cli, ["vc-check", "2"]).exit_code == 2


class TestConfigFile:
    """Test the --config settings file."""

    def test_config_sets_repetitions(self, runner, temp_dir):
        config = temp_dir / "settings.json"
        config.write_text(json.dumps({"repetitions": 2, "default_seed": 9}))
        out = temp_dir / "tradeoff.csv"
        result = runner.invoke(
            cli, ["--config", str(config), "sweep", "--dataset", "cliques:4,4", "--eta", "0",
                  "--alpha", "1", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        (record,) = read_csv(out)
        assert record.reps == 2
        assert record.seed == 9
        assert get_settings().repetitions == 2

    def test_invalid_config(self, runner, temp_dir):
        config = temp_dir / "settings.json"
        config.write_text(json.dumps({"repetitions": 0}))
        result = runner.invoke(cli, ["--config", str(config), "vc-check", "4"])
        assert result.exit_code == 2
        config.write_text("{not json")
        assert runner.invoke(cli, ["--config", str(config), "vc-check", "4"]).exit_code == 2


if __name__ == "__main__":
    pytest.main([__file__])
