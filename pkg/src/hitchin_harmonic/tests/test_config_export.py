"""
Tests for run configuration, report hashing and export.
"""

import json
import math

import numpy as np
import pandas as pd
import pytest

from hitchin_harmonic.shared.config import RunConfig, Tolerances
from hitchin_harmonic.shared.errors import ConfigError, ConvergenceError, PositivityViolation
from hitchin_harmonic.shared.export import ReportWriter, matrix_row_major, to_jsonable
from hitchin_harmonic.shared.hash_manager import HashManager, config_hash, strip_volatile
from hitchin_harmonic.shared.validation import ValidationResult, summarize, timed


def test_defaults_are_valid():
    config = RunConfig()
    assert config.d == 3
    assert config.radii == [2.0, 4.0, 6.0]
    assert config.tolerances.solver_tol == 1e-8


@pytest.mark.parametrize("document, field_path", [
    ({"d": "three"}, "d"),
    ({"d": 9}, "d"),
    ({"delta": 0.0}, "delta"),
    ({"section": "lower"}, "section"),
    ({"tolerances": {"solver_tol": "tight"}}, "tolerances.solver_tol"),
    ({"colour": "blue"}, "<root>"),
])
def test_schema_errors_name_the_field(document, field_path):
    with pytest.raises(ConfigError) as exc:
        RunConfig.from_dict(document)
    assert exc.value.field_path == field_path


def test_from_dict_builds_nested_tolerances():
    config = RunConfig.from_dict({"d": 4, "radii": [1, 2], "tolerances": {"karcher_max_iter": 5}})
    assert isinstance(config.tolerances, Tolerances)
    assert config.tolerances.karcher_max_iter == 5
    assert config.radii == [1.0, 2.0]


def test_invariants_are_checked_after_the_schema():
    with pytest.raises(ConfigError) as exc:
        RunConfig(radii=[3.0, 2.0])
    assert exc.value.field_path == "radii"
    with pytest.raises(ConfigError) as exc:
        RunConfig(window=1.0)
    assert exc.value.field_path == "window"


def test_from_json(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"d": 2, "seed": 11}))
    config = RunConfig.from_json(path)
    assert (config.d, config.seed) == (2, 11)

    path.write_text("{not json")
    with pytest.raises(ConfigError):
        RunConfig.from_json(path)


def test_overrides_ignore_none_and_reject_unknown(config):
    moved = config.with_overrides(seed=5, radius=None)
    assert moved.seed == 5
    assert moved.radius == config.radius
    with pytest.raises(ConfigError):
        config.with_overrides(colour="blue")
    with pytest.raises(ConfigError):
        config.with_overrides(d=1)


def test_named_streams_are_deterministic(config):
    a = config.rng("stability").normal(size=4)
    b = config.rng("stability").normal(size=4)
    c = config.rng("curve").normal(size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_from_env(monkeypatch, tmp_path):
    monkeypatch.setenv("HITCHIN_D", "4")
    monkeypatch.setenv("HITCHIN_SEED", "9")
    monkeypatch.setenv("HITCHIN_OUTPUT_DIR", str(tmp_path))
    monkeypatch.setenv("HITCHIN_PROGRESS", "true")
    config = RunConfig.from_env()
    assert (config.d, config.seed, config.show_progress) == (4, 9, True)
    assert config.output_dir == tmp_path


def test_performance_profiles(config):
    assert config.get_performance_settings()["max_workers"] == 1
    assert config.get_performance_settings("unknown")["max_workers"] == 4


def test_config_hash_ignores_volatile_fields(config, tmp_path):
    moved = config.with_overrides(output_dir=tmp_path / "elsewhere", show_progress=True)
    assert config_hash(config.to_dict(include_volatile=False)) == config_hash(moved.to_dict(include_volatile=False))
    reseeded = config.with_overrides(seed=config.seed + 1)
    assert config_hash(config.to_dict(include_volatile=False)) != config_hash(reseeded.to_dict(include_volatile=False))


def test_to_jsonable():
    data = to_jsonable({"a": np.float64(math.nan), "b": np.arange(3), "c": math.inf, 1: np.bool_(True)})
    assert data == {"a": "nan", "b": [0, 1, 2], "c": "inf", "1": True}
    assert matrix_row_major(np.array([[1, 2], [3, 4]])) == [1.0, 2.0, 3.0, 4.0]


def test_reports_are_byte_identical_across_runs(config):
    payload = {"value": np.float64(0.25), "execution_time": 1.5, "nested": [{"execution_time": 2.0, "k": 1}]}
    writer = ReportWriter(config)
    path = writer.write_json("sample", payload)
    first = path.read_bytes()
    payload["execution_time"] = 99.0
    ReportWriter(config).write_json("sample", payload)
    assert path.read_bytes() == first

    document = json.loads(first)
    assert "execution_time" not in document
    assert document["nested"] == [{"k": 1}]
    assert document["seed"] == config.seed
    assert document["config_hash"] == writer.config_hash
    assert document["tolerances"]["solver_tol"] == config.tolerances.solver_tol


def test_hash_manager_tracks_changes(tmp_path):
    hashes = HashManager(tmp_path)
    assert hashes.has_changed("report", {"x": 1})
    assert not hashes.has_changed("report", {"x": 1, "execution_time": 3.0})
    assert hashes.has_changed("report", {"x": 2})
    assert HashManager(tmp_path).get_hash("report") == hashes.get_hash("report")
    hashes.clear()
    assert hashes.get_hash("report") is None
    assert strip_volatile([{"execution_time": 1}]) == [{}]


def test_write_csv(config):
    writer = ReportWriter(config)
    path = writer.write_csv("rows", [{"a": 1.0 / 3.0, "b": 2}, {"a": 0.5, "b": 3}])
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["a", "b"]
    assert frame["a"].iloc[0] == pytest.approx(1.0 / 3.0, rel=1e-11)


def test_error_payloads():
    payload = ConvergenceError("cap", residuals=[1.0, 0.5]).payload()
    assert payload["iterations"] == 2
    assert payload["last_residual"] == 0.5
    violation = PositivityViolation("minor", rows=(0, 1), cols=(1, 2), value=-1.0).payload()
    assert violation["rows"] == [0, 1]
    assert ConfigError("bad", "d").payload()["field_path"] == "d"


def test_timed_catches_crashes():
    def crash():
        raise RuntimeError("boom")

    ok = timed("ok", lambda: ValidationResult("ok", True))
    failed = timed("crash", crash)
    assert ok.passed
    assert not failed.passed
    assert failed.errors == ["RuntimeError: boom"]

    summary = summarize([ok, failed])
    assert summary["passed_tests"] == 1
    assert summary["success_rate"] == pytest.approx(0.5)
    assert summarize([])["success_rate"] == 0.0
