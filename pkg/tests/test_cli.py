from __future__ import annotations

import csv
import hashlib
import json
import math
import sys
from pathlib import Path

import pytest

from src.cli.jobs import JobSpec, parse_n_list, parse_range
from src.cli.main import EXIT_NO_SOLUTION, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, build_parser, job_from_args, main
from src.errors import UsageError
from src.neuron.types import Regime


def _read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header, body = lines[0], list(csv.reader(lines[1:]))
    return header, body[0], body[1:]


def test_parse_range_and_branch_lists():
    assert parse_range("2.5") == (2.5, 2.5)
    assert parse_range("0:10", "tau") == (0.0, 10.0)
    for bad in ("5:1", "a:b", "1:2:3", "inf"):
        with pytest.raises(UsageError):
            parse_range(bad)

    assert parse_n_list("0,2,3") == (0, 2, 3)
    assert parse_n_list("0-2,5") == (0, 1, 2, 5)
    assert parse_n_list("3, 1, 3") == (1, 3)
    for bad in ("", "2-1", "x"):
        with pytest.raises(UsageError):
            parse_n_list(bad)


def test_job_spec_validation():
    args = build_parser().parse_args(["branches", "--kappa", "5", "--nmax", "2"])
    spec = job_from_args(args)
    assert spec.n_values == (0, 1, 2)
    assert spec.signed_current == -1.0
    assert JobSpec("branches", regime=Regime.POSITIVE).signed_current == 1.0

    with pytest.raises(UsageError):
        JobSpec("branches", regime=Regime.POSITIVE, current=-1.0).validate()
    with pytest.raises(UsageError):
        JobSpec("branches", grid=1).validate()
    with pytest.raises(UsageError):
        JobSpec("simulate", horizon=-1.0).validate()
    with pytest.raises(UsageError):
        job_from_args(build_parser().parse_args(["branches", "--kappa", "2:3"]))


def test_branches_csv(tmp_path):
    out = tmp_path / "branches.csv"
    code = main(["branches", "--kappa", "5", "--tau", "0:10", "--n", "0,1", "--grid", "50", "--out", str(out)])
    assert code == EXIT_OK

    header, columns, rows = _read_csv(out)
    assert header == "# schema: branches/v1"
    assert columns == ["n", "tau", "T", "gamma", "stability"]
    assert {row[0] for row in rows} == {"0", "1"}
    for n, tau, period, gamma, stability in rows:
        assert 0.0 <= float(tau) <= 10.0
        assert float(tau) / (int(n) + 1) < float(period)
        assert stability in {"stable", "unstable", "superstable", "saddle_node"}
        if n == "0":
            assert stability != "unstable"


def test_output_is_deterministic(tmp_path):
    argv = ["branches", "--kappa", "5", "--tau", "0:8", "--nmax", "3", "--grid", "40"]
    first, second, pooled = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert main(argv + ["--out", str(first)]) == EXIT_OK
    assert main(argv + ["--out", str(second)]) == EXIT_OK
    assert main(["--workers", "2"] + argv + ["--out", str(pooled)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes() == pooled.read_bytes()


def test_physical_current_scales_branches(tmp_path):
    unit, scaled = tmp_path / "unit.csv", tmp_path / "scaled.csv"
    assert main(["branches", "--kappa", "5", "--tau", "0:4", "--n", "1", "--grid", "30", "--out", str(unit)]) == 0
    argv = ["branches", "--current=-4", "--kappa", "10", "--tau", "0:2", "--n", "1", "--grid", "30"]
    assert main(argv + ["--out", str(scaled)]) == 0
    _, _, unit_rows = _read_csv(unit)
    _, _, scaled_rows = _read_csv(scaled)
    assert len(unit_rows) == len(scaled_rows) > 0
    for a, b in zip(unit_rows, scaled_rows):
        assert float(b[2]) == pytest.approx(float(a[2]) / 2.0, rel=1e-12)
        assert float(b[3]) == pytest.approx(float(a[3]), rel=1e-12)


def test_positive_branches_json(tmp_path):
    out = tmp_path / "pos.json"
    argv = ["branches", "--regime", "pos", "--kappa", "2", "--tau", "0:10", "--n", "0-2", "--grid", "40"]
    assert main(argv + ["--format", "json", "--out", str(out)]) == EXIT_OK

    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["schema"] == "branches/v1"
    assert document["columns"] == ["n", "tau", "T", "gamma", "stability"]
    assert document["meta"]["regime"] == "pos"
    assert len(document["rows"]) == 3 * 40
    assert all(0.0 < row[2] <= math.pi for row in document["rows"])


def test_sncurves_with_cusps(tmp_path):
    out = tmp_path / "sn.csv"
    argv = ["sncurves", "--regime", "pos", "--kappa", "0.1:2", "--n", "0,1", "--grid", "20", "--out", str(out)]
    assert main(argv) == EXIT_OK
    _, columns, rows = _read_csv(out)
    assert columns == ["n", "kind", "sign", "kappa", "tau", "T"]
    cusps = [row for row in rows if row[1] == "cusp"]
    assert len(cusps) == 2
    assert float(cusps[0][4]) == pytest.approx(3.4173, abs=1e-4)
    assert {row[2] for row in rows if row[1] == "saddle_node"} == {"minus", "plus"}
    assert all(row[0] == "1" for row in rows)


def test_excitable_sncurves_include_homoclinic_curve(tmp_path):
    out = tmp_path / "sn.csv"
    assert main(["sncurves", "--kappa", "3:6", "--n", "0,1", "--grid", "4", "--out", str(out)]) == EXIT_OK
    _, _, rows = _read_csv(out)
    homoclinic = [row for row in rows if row[1] == "homoclinic"]
    assert len(homoclinic) == 4 and all(row[5] == "inf" for row in homoclinic)
    assert len([row for row in rows if row[1] == "saddle_node"]) == 4


def test_multipliers_at_a_parameter_point(tmp_path):
    out = tmp_path / "mult.json"
    argv = ["multipliers", "--kappa", "5", "--tau", "4", "--n", "1", "--format", "json", "--out", str(out)]
    assert main(argv) == EXIT_OK
    rows = json.loads(out.read_text(encoding="utf-8"))["rows"]
    # 两个周期解，各两个乘子
    assert len(rows) == 4
    assert sorted(row[8] for row in rows[::2]) == ["stable", "unstable"]
    for row in rows[::2]:
        assert row[5] == 1.0 and row[6] == 0.0


def test_multiplier_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["multipliers", "--gamma", "0.5:1.5", "--n", "2", "--grid", "3", "--out", str(out)]) == EXIT_OK
    _, _, rows = _read_csv(out)
    assert len(rows) == 3 * 3
    assert [row[8] for row in rows[::3]] == ["stable", "superstable", "saddle_node"]


def test_delta_simulation_json(tmp_path):
    out = tmp_path / "sim.json"
    argv = ["simulate", "--kappa", "5", "--tau", "4", "--seed-spikes", "2", "--horizon", "80", "--format", "json"]
    assert main(argv + ["--out", str(out)]) == EXIT_OK
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["schema"] == "event_trajectory/v1"
    assert document["meta"]["firing_times"]
    assert document["columns"] == ["t", "theta"]
    assert all(-math.pi < row[1] <= math.pi for row in document["rows"])


def test_default_output_path_uses_config_directory(tmp_path):
    config_file = tmp_path / "theta.yaml"
    config_file.write_text(f"version: 1\noutput:\n  directory: {tmp_path / 'data'}\n", encoding="utf-8")
    argv = ["--config", str(config_file), "multipliers", "--gamma", "0.5", "--n", "1"]
    assert main(argv) == EXIT_OK
    assert (tmp_path / "data" / "multipliers.csv").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["branches", "--kappa", "5", "--tau", "5:1"],
        ["branches", "--tau", "0:5"],
        ["branches", "--kappa", "5", "--n", "1", "--nmax", "2"],
        ["branches", "--regime", "pos", "--current=-1", "--kappa", "2"],
        ["simulate", "--kappa", "5", "--tau", "1:2"],
        ["simulate", "--kappa", "5", "--tau", "4", "--seed-spikes", "0"],
        ["multipliers", "--gamma=-0.5:1", "--n", "1"],
        ["multipliers", "--gamma=-1", "--n", "2"],
        ["--config", "does-not-exist.yaml", "branches", "--kappa", "5"],
    ],
)
def test_usage_errors_exit_with_two(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path / "x.csv")]) == EXIT_USAGE
    assert not (tmp_path / "x.csv").exists()


def test_argparse_errors_exit_with_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["branches", "--regime", "sideways"])
    assert excinfo.value.code == EXIT_USAGE


def test_missing_solution_and_numerical_failure_exit_codes(tmp_path):
    below_homoclinic = ["multipliers", "--kappa", "5", "--tau", "0.2", "--n", "0"]
    assert main(below_homoclinic + ["--out", str(tmp_path / "a.csv")]) == EXIT_NO_SOLUTION
    # 步数超过上限
    too_fine = ["simulate", "--model", "smooth", "--kappa", "5", "--tau", "4", "--dt", "1e-9"]
    assert main(too_fine + ["--out", str(tmp_path / "b.csv")]) == EXIT_NUMERICAL


def test_unexpected_arithmetic_errors_exit_as_numerical_failures(tmp_path, monkeypatch):
    def broken(spec, config, workers=1):
        raise ValueError("math domain error")

    monkeypatch.setattr(sys.modules["src.cli.main"], "build_dataset", broken)
    assert main(["multipliers", "--gamma", "1", "--n", "1", "--out", str(tmp_path / "x.csv")]) == EXIT_NUMERICAL


def test_multiplier_sweep_from_zero_gamma(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["multipliers", "--gamma", "0:3", "--n", "1-4", "--grid", "4", "--out", str(out)]) == EXIT_OK
    _, _, rows = _read_csv(out)
    assert len(rows) == 4 * sum(n + 1 for n in range(1, 5))
    uncoupled = [row for row in rows if float(row[3]) == 0.0]
    assert {int(row[0]) for row in uncoupled} == {1, 2, 3, 4}
    for row in uncoupled:
        n = int(row[0])
        root = complex(float(row[5]), float(row[6]))
        assert row[8] == "neutral"
        assert float(row[7]) == pytest.approx(1.0, abs=1e-12)
        assert abs(root ** (n + 1) - 1.0) < 1e-10


def test_csv_simulation_keeps_the_event_log(tmp_path):
    out = tmp_path / "sim.csv"
    argv = ["simulate", "--kappa", "5", "--tau", "4", "--seed-spikes", "2", "--horizon", "80", "--out", str(out)]
    assert main(argv) == EXIT_OK
    sidecar = tmp_path / "sim.meta.json"
    assert sidecar.exists()
    document = json.loads(sidecar.read_text(encoding="utf-8"))
    assert document["schema"] == "event_log/v1"
    assert document["firing_times"]
    assert document["n"] == 1
    assert document["period"] == pytest.approx(2.13, abs=0.05)


def test_weakly_stable_orbit_is_reported_after_settling(tmp_path):
    out = tmp_path / "coexisting.json"
    argv = [
        "simulate", "--current=-0.01", "--kappa", "1", "--tau", "20", "--seed-spikes", "2",
        "--horizon", "400", "--format", "json", "--out", str(out),
    ]
    assert main(argv) == EXIT_OK
    meta = json.loads(out.read_text(encoding="utf-8"))["meta"]
    assert meta["n"] == 1
    assert meta["period"] == pytest.approx(10.5812, abs=1e-3)
    assert meta["settled_at"] > 400
    assert max(row[0] for row in json.loads(out.read_text(encoding="utf-8"))["rows"]) <= 400


@pytest.mark.parametrize("name", ["multipliers_superstable.csv", "multipliers_unity.csv"])
def test_pinned_datasets_match_recorded_checksums(name, tmp_path):
    manifest = Path(__file__).parent.parent / "docs" / "checksums.sha256"
    recorded = {}
    for line in manifest.read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.startswith("#"):
            digest, filename = line.split(maxsplit=1)
            recorded[filename] = digest
    argv = {
        "multipliers_superstable.csv": ["multipliers", "--gamma", "1", "--n", "1-3"],
        "multipliers_unity.csv": ["multipliers", "--gamma", "0", "--n", "1"],
    }[name]
    out = tmp_path / name
    assert main(argv + ["--out", str(out)]) == EXIT_OK
    assert hashlib.sha256(out.read_bytes()).hexdigest() == recorded[name]
