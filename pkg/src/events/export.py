# export.py
# =========================
# 事件轨迹导出（Trajectory export）
# CSV: 均匀网格上的 (t, theta)，由闭式解采样；JSON: 放电/脉冲事件日志
# =========================

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from ..config import ThetaConfig
from ..neuron.flows import evolve_voltage, wrap_phase
from ..records import write_csv, write_json
from .types import EventTrajectory


def sample_phases(traj: EventTrajectory, dt: float) -> Tuple[np.ndarray, np.ndarray]:
    """按时间顺序走一遍分段，每个采样点用所在分段的闭式解求 theta。"""
    times = np.arange(0.0, traj.t_end_sim + 0.5 * dt, dt)
    times = times[times <= traj.t_end_sim]
    thetas = np.empty_like(times)
    segments = traj.segments
    index = 0
    for k, t in enumerate(times):
        while index + 1 < len(segments) and segments[index + 1].t_start <= t:
            index += 1
        seg = segments[index]
        elapsed = t - seg.t_start
        v = seg.voltage_start if elapsed == 0.0 else evolve_voltage(seg.voltage_start, elapsed, traj.params.current)
        thetas[k] = math.pi if math.isinf(v) else wrap_phase(2.0 * math.atan(v))
    return times, thetas


def event_log(traj: EventTrajectory) -> dict:
    p = traj.params
    return {
        "params": {"current": p.current, "kappa": p.kappa, "tau": p.tau},
        "seed_firings": list(traj.history.seed_firings),
        "theta0": traj.history.theta0,
        "firing_times": traj.simulated_firings,
        "kick_times": traj.kick_times,
        "t_end": traj.t_end_sim,
        "status": traj.status,
    }


def write_trajectory_csv(
    traj: EventTrajectory,
    path: str | Path,
    dt: Optional[float] = None,
    config: Optional[ThetaConfig] = None,
) -> Path:
    cfg = config or ThetaConfig.default()
    times, thetas = sample_phases(traj, dt or cfg.events.sample_dt)
    return write_csv(
        path,
        "event_trajectory",
        ["t", "theta"],
        zip(times.tolist(), thetas.tolist()),
        cfg.output.schema_version,
    )


def write_event_log(
    traj: EventTrajectory,
    path: str | Path,
    config: Optional[ThetaConfig] = None,
) -> Path:
    cfg = config or ThetaConfig.default()
    return write_json(path, "event_log", event_log(traj), cfg.output.schema_version)
