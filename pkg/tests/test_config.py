from __future__ import annotations

import pytest

from src.config import ThetaConfig, load_config


def test_theta_config_defaults_match_documented_constants():
    cfg = ThetaConfig.default()

    assert cfg.roots.grid_points == 10_000
    assert cfg.stability.superstable_tol == 1e-10
    assert cfg.events.stall_tol == 1e-12
    assert cfg.smooth.pulse_exponent == 5
    assert cfg.smooth.dt_fraction == 1e-4
    assert cfg.lyapunov.d0 == 1e-8
    assert cfg.continuation.tau_step == 0.05
    assert cfg.output.schema_version == 1


def test_theta_config_from_dict_ignores_unknown_keys_and_coerces_types():
    cfg = ThetaConfig.from_dict(
        {
            "roots": {"grid_points": "2500", "xtol": "1e-12", "unknown": 1},
            "smooth": {"pulse_exponent": 80.0, "dt_max": "5e-4"},
            "lyapunov": {"seed": 7},
            "unknown_top_level": {"x": 1},
        }
    )

    assert cfg.roots.grid_points == 2500
    assert cfg.roots.xtol == 1e-12
    assert cfg.smooth.pulse_exponent == 80
    assert cfg.smooth.dt_max == 5e-4
    assert cfg.lyapunov.seed == 7
    # 未出现的 section 保持默认
    assert cfg.events.horizon_delays == 200.0


def test_theta_config_rejects_unknown_version():
    with pytest.raises(ValueError):
        ThetaConfig.from_dict({"version": 2})


def test_theta_config_from_yaml_replaces_env_vars(tmp_path, monkeypatch):
    cfg_path = tmp_path / "theta.yaml"
    monkeypatch.setenv("TEST_AUTAPSE_OUT", "/tmp/autapse-out")
    cfg_path.write_text(
        "\n".join(
            [
                "version: 1",
                "output:",
                "  directory: \"<TEST_AUTAPSE_OUT>\"",
                "events:",
                "  horizon_delays: 50",
            ]
        ),
        encoding="utf-8",
    )

    cfg = ThetaConfig.from_yaml(cfg_path)
    assert cfg.output.directory == "/tmp/autapse-out"
    assert cfg.events.horizon_delays == 50.0


def test_load_config_falls_back_to_defaults_and_reports_missing_explicit_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_config() == ThetaConfig.default()

    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "missing.yaml")


def test_repository_config_file_loads():
    from pathlib import Path

    path = Path(__file__).resolve().parent.parent / "config" / "theta.yaml"
    cfg = load_config(path)
    assert cfg.smooth.tail_delays == 2.0
    assert cfg.continuation.measure_delays == 10.0
