# export.py
# =========================
# 光滑反馈仿真导出：采样相位 CSV、运行摘要 JSON、延拓分支 CSV
# =========================

from __future__ import annotations

from pathlib import Path
from typing import Optional

from ..config import ThetaConfig
from ..neuron.flows import wrap_phase
from ..records import write_csv, write_json
from .types import BranchTrace, DdeRun


def run_summary(run: DdeRun) -> dict:
    p = run.params
    lyap = run.lyapunov
    return {
        "params": {"current": p.current, "kappa": p.kappa, "tau": p.tau},
        "dt": run.dt,
        "pulse_exponent": run.pulse_exponent,
        "t_end": run.t_end,
        "transient": run.transient,
        "spike_times": run.spike_times,
        "spurious": run.spurious,
        "downward_crossings": run.downward_crossings,
        "measured_period": run.measured_period,
        "spikes_per_delay": run.spikes_per_delay,
        "pattern_length": run.pattern_length,
        "attractor_class": run.attractor_class,
        "lyapunov": None
        if lyap is None
        else {"exponent": lyap.exponent, "ci_low": lyap.ci_low, "ci_high": lyap.ci_high, "rest": lyap.rest},
    }


def write_run_csv(run: DdeRun, path: str | Path, config: Optional[ThetaConfig] = None) -> Path:
    cfg = config or ThetaConfig.default()
    rows = ((t, wrap_phase(theta)) for t, theta in zip(run.sample_times.tolist(), run.sample_thetas.tolist()))
    return write_csv(path, "dde_trajectory", ["t", "theta"], rows, cfg.output.schema_version)


def write_run_summary(run: DdeRun, path: str | Path, config: Optional[ThetaConfig] = None) -> Path:
    cfg = config or ThetaConfig.default()
    return write_json(path, "dde_run", run_summary(run), cfg.output.schema_version)


def write_branch_trace(trace: BranchTrace, path: str | Path, config: Optional[ThetaConfig] = None) -> Path:
    cfg = config or ThetaConfig.default()
    rows = [(pt.tau, pt.period, pt.n, "") for pt in trace.points]
    rows += [(tau, "", "", reason) for tau, reason in trace.ends]
    rows.sort(key=lambda row: row[0])
    return write_csv(path, "dde_branch", ["tau", "period", "n", "lost"], rows, cfg.output.schema_version)
