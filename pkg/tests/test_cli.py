import json
from unittest.mock import Mock, patch

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from peakon_lab import RunStatus
from peakon_lab.lab.cli import main
from peakon_lab.lab.export import TRAJECTORY_COLUMNS
from peakon_lab.lab.surface import SURFACE_COLUMNS
from peakon_lab.lab.sweep import DeltaOutcome


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_constants(runner, tmp_path):
    out = tmp_path / "verify.json"
    result = runner.invoke(main, ["verify", "--suite", "constants", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "10/10 checks passed" in result.output
    summary = json.loads(out.read_text())
    assert summary["command"] == "verify"
    assert all(check["pass"] for check in summary["checks"])


def test_verify_failing_tolerance(runner):
    result = runner.invoke(main, ["verify", "--suite", "constants", "--tol", "1e-30"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--suite", "bogus"],
        ["verify", "--trials", "0"],
        ["verify", "--n", "48"],
    ],
)
def test_verify_usage_errors(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_simulate_constant(runner, tmp_path):
    out = tmp_path / "run"
    result = runner.invoke(
        main,
        ["simulate", "--init", "constant", "--value", "2", "--t-end", "0.05",
         "--n", "32", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out / "trajectory.csv")
    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert frame["t"].iloc[-1] == pytest.approx(0.05)
    assert frame["M"].to_numpy() == pytest.approx(2.0)
    summary = json.loads((out / "summary.json").read_text())
    assert summary["status"] == "completed"
    assert summary["breaking"] is False
    assert summary["config"]["filter_alpha"] == 0.0


def test_simulate_fourier_with_snapshots(runner, tmp_path):
    out = tmp_path / "run"
    result = runner.invoke(
        main,
        ["simulate", "--init", "fourier", "--mean", "2", "--amp", "0.1", "--mode", "2",
         "--n", "32", "--t-end", "0.05", "--record-every", "5", "--snapshots",
         "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    fields = pd.read_csv(out / "fields.csv")
    trajectory = pd.read_csv(out / "trajectory.csv")
    assert len(fields) == 32 * len(trajectory)


@pytest.mark.parametrize(
    "args",
    [
        ["--init", "fourier", "--mode", "40", "--n", "32"],
        ["--init", "constant", "--n", "32", "--dt", "1"],
        ["--n", "100"],
    ],
)
def test_simulate_usage_errors(runner, tmp_path, args):
    result = runner.invoke(main, ["simulate", *args, "--out", str(tmp_path / "run")])
    assert result.exit_code == 2


def test_fsurface_peakon(runner, tmp_path):
    out = tmp_path / "surface.csv"
    result = runner.invoke(main, ["fsurface", "--points", "11", "--out", str(out)])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns) == SURFACE_COLUMNS
    assert (frame["M"] >= frame["m"]).all()
    crest, trough = 1.0, 23 / 26
    expected = sum(
        M >= m
        for M in np.linspace(crest - 0.1, crest + 0.1, 11)
        for m in np.linspace(trough - 0.1, trough + 0.1, 11)
    )
    assert len(frame) == expected < 121
    summary = json.loads(out.with_suffix(".json").read_text())
    assert summary["source_point"]["F"] == pytest.approx(0.0, abs=1e-12)


def test_fsurface_rectangle_inside_the_domain_keeps_every_point(runner, tmp_path):
    out = tmp_path / "surface.csv"
    result = runner.invoke(
        main,
        ["fsurface", "--max-range", "1.0,1.1", "--min-range", "0.8,0.9",
         "--points", "11", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(out)) == 121


def test_fsurface_from_field_file(runner, tmp_path):
    field_file = tmp_path / "u.csv"
    x = [j / 32 for j in range(32)]
    pd.DataFrame({"x": x, "u": [2.0] * 32}).to_csv(field_file, index=False)
    out = tmp_path / "surface.csv"
    result = runner.invoke(
        main,
        ["fsurface", "--source", "field", "--field-file", str(field_file),
         "--points", "5", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize(
    "args",
    [
        ["--source", "field"],
        ["--max-range", "0.1,0.2", "--min-range", "0.5,0.6"],
        ["--max-range", "0.1"],
    ],
)
def test_fsurface_usage_errors(runner, tmp_path, args):
    result = runner.invoke(main, ["fsurface", *args, "--out", str(tmp_path / "s.csv")])
    assert result.exit_code == 2


def test_config_file_supplies_defaults(runner, tmp_path):
    config = tmp_path / "lab.cfg"
    config.write_text("# constant run\ninit = constant\nt-end = 0.02\nn = 32\n")
    out = tmp_path / "run"
    result = runner.invoke(main, ["--config", str(config), "simulate", "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["init"] == "constant"
    assert summary["config"]["n"] == 32
    assert summary["final_time"] == pytest.approx(0.02)


def test_command_line_overrides_config(runner, tmp_path):
    config = tmp_path / "lab.cfg"
    config.write_text("suite = identities\n")
    result = runner.invoke(main, ["--config", str(config), "verify", "--suite", "constants"])
    assert result.exit_code == 0, result.output
    assert "10/10" in result.output


def test_config_unknown_key(runner, tmp_path):
    config = tmp_path / "lab.cfg"
    config.write_text("warp-factor = 9\n")
    result = runner.invoke(main, ["--config", str(config), "verify"])
    assert result.exit_code == 2


def _report(passed):
    outcome = DeltaOutcome(
        delta=1e-3,
        status=RunStatus.COMPLETED,
        final_time=1.0,
        records=10,
        sup_distance=0.03,
        sup_max_deviation=1e-3,
        sup_phase_distance=0.05,
        sup_reference_distance=0.03,
        chain_margin=0.0 if passed else -1.0,
        chain_holds=passed,
    )
    return Mock(
        outcomes=(outcome,),
        passed=passed,
        breaking=False,
        distance_nondecreasing=Mock(return_value=passed),
        to_dict=Mock(return_value={}),
    )


@pytest.mark.parametrize("passed,code", [(True, 0), (False, 1)])
def test_stability_sweep_exit_code(runner, tmp_path, passed, code):
    out = tmp_path / "sweep.json"
    with patch("peakon_lab.lab.cli.run_sweep", return_value=_report(passed)) as run:
        result = runner.invoke(
            main,
            ["stability-sweep", "--deltas", "0.001", "--n", "64", "--t-end", "0.1",
             "--out", str(out)],
        )
    assert result.exit_code == code, result.output
    spec = run.call_args[0][0]
    assert spec.deltas == (1e-3,)
    assert spec.solver.n == 64
    assert spec.solver.filter_strength == 36.0
    assert "0.001" in result.output
    assert f"D(delta) nondecreasing: {'yes' if passed else 'no'}" in result.output
    summary = json.loads(out.read_text())
    assert summary["sup_orbital_distance"] == pytest.approx(0.03)


def test_stability_sweep_rejects_unsorted_deltas(runner):
    with patch("peakon_lab.lab.cli.run_sweep") as run:
        result = runner.invoke(main, ["stability-sweep", "--deltas", "0.01,0.001"])
    assert result.exit_code == 2
    run.assert_not_called()
