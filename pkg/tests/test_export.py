import math

import numpy as np
import pandas as pd
import pytest

from peakon_lab import ConfigurationError, OrbitMode, PeriodicField, SolverConfig, evolve
from peakon_lab.lab.checks import CheckResult
from peakon_lab.lab.config import default_map, load_config
from peakon_lab.lab.export import (
    TRAJECTORY_COLUMNS,
    build_summary,
    read_field,
    trajectory_frame,
    write_summary,
    write_trajectory,
)


@pytest.fixture
def record(grid):
    u0 = PeriodicField.from_function(grid, lambda x: 2.0 + 0.1 * np.sin(2 * np.pi * x))
    cfg = SolverConfig(n=grid.n, dt=2e-3, t_end=0.01)
    return evolve(u0, cfg, distance_fn=lambda u, t: 0.5)


def test_trajectory_frame(record):
    frame = trajectory_frame(record)
    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert len(frame) == len(record)
    assert frame["dist_to_orbit"].to_numpy() == pytest.approx(0.5)


def test_trajectory_frame_without_distances(grid):
    record = evolve(PeriodicField.constant(grid, 1.0), SolverConfig(n=grid.n, dt=1e-3, t_end=2e-3))
    assert trajectory_frame(record)["dist_to_orbit"].isna().all()


def test_trajectory_csv_keeps_full_precision(record, tmp_path):
    path = write_trajectory(record, tmp_path / "out" / "trajectory.csv")
    frame = pd.read_csv(path, float_precision="round_trip")
    np.testing.assert_array_equal(frame["H1"].to_numpy(), [c.h1 for c in record.conserved])
    np.testing.assert_array_equal(frame["t"].to_numpy(), record.times)


def test_build_summary_is_json_ready(tmp_path):
    summary = build_summary(
        "simulate",
        {"orbit_mode": OrbitMode.MINIMIZE, "path": tmp_path, "dt": np.float64(1e-3)},
        [CheckResult.from_values("H0 drift", 0.0, 1e-12)],
        math.nan,
        False,
        drift=(np.float64(math.inf), 1.0),
    )
    assert summary["config"] == {"orbit_mode": "minimize", "path": str(tmp_path), "dt": 1e-3}
    assert summary["sup_orbital_distance"] is None
    assert summary["drift"] == [None, 1.0]
    assert summary["checks"][0]["pass"] is True
    write_summary(summary, tmp_path / "summary.json")


def test_read_field(tmp_path):
    path = tmp_path / "u.csv"
    pd.DataFrame({"u": np.linspace(0.0, 1.0, 16)}).to_csv(path, index=False)
    u = read_field(path)
    assert u.grid.n == 16
    assert u.values[-1] == pytest.approx(1.0)


def test_read_field_errors(tmp_path):
    path = tmp_path / "bad.csv"
    pd.DataFrame({"v": np.zeros(16)}).to_csv(path, index=False)
    with pytest.raises(ConfigurationError) as exc:
        read_field(path)
    assert exc.value.key == "field_file"

    pd.DataFrame({"u": np.zeros(20)}).to_csv(path, index=False)
    with pytest.raises(ConfigurationError):
        read_field(path)


def test_load_config(tmp_path):
    path = tmp_path / "lab.cfg"
    path.write_text("; comment\nt-end = 2.5  # inline\nfilter_alpha = 10\n")
    assert load_config(path) == {"t_end": "2.5", "filter_alpha": "10"}


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(tmp_path / "missing.cfg")
    path = tmp_path / "bad.cfg"
    path.write_text("no delimiter here\n")
    with pytest.raises(ConfigurationError):
        load_config(path)


def test_default_map():
    commands = {"simulate": ["n", "t_end"], "verify": ["n", "trials"]}
    mapped = default_map({"n": "64", "trials": "5"}, commands)
    assert mapped == {"simulate": {"n": "64"}, "verify": {"n": "64", "trials": "5"}}
    with pytest.raises(ConfigurationError) as exc:
        default_map({"speed": "1"}, commands)
    assert exc.value.key == "speed"
