"""
Tests for the command line: exit codes, reports and error documents.
"""

import json
import re
from pathlib import Path

import pytest
from click.testing import CliRunner

from main import cli


@pytest.fixture
def runner():
    return CliRunner()


def write_config(tmp_path, **document):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(document))
    return str(path)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "1.0.0" in result.output


def test_geometry_selftest_writes_the_report(runner, tmp_path):
    config = write_config(tmp_path, pair_samples=30, busemann_pairs=10)
    out = tmp_path / "out"
    result = runner.invoke(cli, ["geometry", "selftest", "--config", config, "--out", str(out), "--d", "3"])
    assert result.exit_code == 0, result.output
    assert "separation" in result.output
    report = json.loads((out / "reports" / "geometry_selftest.json").read_text())
    assert report["separation"] == pytest.approx(0.5, abs=1e-6)
    assert report["failed_tests"] == 0


def test_curve_build_writes_the_curve_file(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(cli, ["curve", "build", "--out", str(out), "--d", "3", "--samples", "20"])
    assert result.exit_code == 0, result.output
    assert (out / "curve.json").exists()
    report = json.loads((out / "reports" / "curve_build.json").read_text())
    assert report["status"] == "PASS"
    assert report["veronese_error"] == pytest.approx(0.0, abs=1e-10)


def test_invalid_config_exits_with_usage_error(runner, tmp_path):
    config = write_config(tmp_path, d=9)
    result = runner.invoke(cli, ["geometry", "selftest", "--config", config, "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert "'d'" in result.output

    result = runner.invoke(cli, ["curve", "build", "--d", "1", "--out", str(tmp_path / "out")])
    assert result.exit_code == 2


def test_numerical_failure_writes_error_document(runner, tmp_path):
    config = write_config(tmp_path, radii=[1.0], delta=0.5, tolerances={"solver_max_sweeps": 1})
    out = tmp_path / "out"
    result = runner.invoke(cli, ["harmonic", "solve", "--config", config, "--out", str(out), "--no-uniqueness"])
    assert result.exit_code == 1
    error = json.loads((out / "error.json").read_text())
    assert error["error"] == "ConvergenceError"
    assert error["iterations"] == 1


def test_acceptance_sweep_covers_every_subcommand(runner):
    script = (Path(__file__).resolve().parents[3] / "run_acceptance.sh").read_text()
    steps = set(re.findall(r'run_step "\$\w+" (\w+) ([\w-]+)', script))
    for group, command in [("harmonic", "exhaust"), ("stability", "drift"), ("embed", "morse"),
                           ("curve", "count-nontransverse")]:
        assert (group, command) in steps
    for group, command in steps:
        assert runner.invoke(cli, [group, command, "--help"]).exit_code == 0
    assert 'exit "$status"' in script
