# datasets.py
# =========================
# 数据集生成（Dataset builders）
# 每个子命令把 JobSpec 变成一张表（列名 + 行）外加元数据，写文件由 main 负责
# 行顺序只取决于 JobSpec，保证相同输入逐字节相同的输出
# =========================

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..branches.excitable import (
    branch_parametric,
    default_lags,
    gamma_monotonicity_violations,
    homoclinic_locus,
    homoclinic_tau,
    saddle_node_locus,
    solve_branch,
)
from ..branches.oscillatory import (
    branch_parametric_pos,
    cusp_point,
    default_lags_pos,
    saddle_node_locus_pos,
    solve_branch_pos,
)
from ..branches.types import BranchPoint, Coupling, FoldSign, SaddleNodeLocus
from ..config import ThetaConfig
from ..errors import NoSolutionError, UsageError
from ..events.analysis import equispaced_history, settle
from ..events.export import event_log, sample_phases
from ..events.simulator import simulate
from ..neuron.flows import wrap_phase
from ..neuron.types import ModelParams, Regime
from ..smooth.analysis import simulate_smooth
from ..smooth.continuation import trace_stable_branch
from ..smooth.export import run_summary
from ..smooth.integrator import seeded_history
from ..stability.floquet import classify, g_roots
from ..stability.types import Stability
from .jobs import JobSpec, Model


DEFAULT_TAU_RANGE = (0.0, 10.0)
DEFAULT_KAPPA_RANGE = {Regime.NEGATIVE: (2.05, 10.0), Regime.POSITIVE: (-3.0, 3.0)}


@dataclass
class Dataset:
    schema: str
    columns: List[str]
    rows: List[tuple] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def as_payload(self) -> dict:
        return {"columns": self.columns, "rows": [list(r) for r in self.rows], "meta": self.meta}


def _map(fn: Callable, tasks: Sequence, workers: int = 1) -> List:
    """按任务顺序返回结果；workers > 1 时用进程池。"""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _require_kappa(spec: JobSpec) -> float:
    if spec.kappa is None:
        raise UsageError(f"{spec.subcommand}: --kappa is required")
    return spec.kappa


def _scales(spec: JobSpec) -> float:
    return math.sqrt(abs(spec.signed_current))


# ---------- branches ----------

def cmd_branches(spec: JobSpec, config: Optional[ThetaConfig] = None, workers: int = 1) -> Dataset:
    """(n, tau, T, gamma, stability)：delta 模型走解析参数化，smooth 模型走仿真延拓。"""
    cfg = config or ThetaConfig.default()
    kappa = _require_kappa(spec)
    if spec.model is Model.SMOOTH:
        return _smooth_branches(spec, kappa, cfg)

    a = _scales(spec)
    tau_lo, tau_hi = spec.tau_range or DEFAULT_TAU_RANGE
    tasks = [(spec.regime, n, kappa / a, tau_lo * a, tau_hi * a, spec.grid, cfg) for n in spec.n_values]
    dataset = Dataset("branches", ["n", "tau", "T", "gamma", "stability"])
    for points in _map(_branch_points, tasks, workers):
        for p in points:
            dataset.rows.append((p.n, p.tau / a, p.period / a, p.gamma, p.stability))
    dataset.meta = {
        "regime": spec.regime,
        "current": spec.signed_current,
        "kappa": kappa,
        "tau_range": [tau_lo, tau_hi],
        "n": list(spec.n_values),
    }
    logger.info(f"branches: {len(dataset.rows)} rows for n={list(spec.n_values)}")
    return dataset


def _branch_points(task) -> List[BranchPoint]:
    regime, n, kappa, tau_lo, tau_hi, grid, cfg = task
    if regime is Regime.NEGATIVE:
        if not kappa > 2.0:
            logger.warning(f"branch n={n}: kappa={kappa} <= 2, no pulsating solutions")
            return []
        if not tau_hi > homoclinic_tau(kappa):
            return []
        points = branch_parametric(n, kappa, default_lags(kappa, tau_hi, grid), cfg)
        for i in gamma_monotonicity_violations(points):
            logger.warning(f"branch n={n} kappa={kappa}: gamma not monotone at lag index {i}")
    else:
        points = branch_parametric_pos(n, kappa, default_lags_pos(grid), cfg)
    return [p for p in points if tau_lo <= p.tau <= tau_hi]


def _smooth_branches(spec: JobSpec, kappa: float, cfg: ThetaConfig) -> Dataset:
    tau_lo, tau_hi = spec.tau_range or DEFAULT_TAU_RANGE
    start = ModelParams(spec.signed_current, kappa, tau_lo if tau_lo > 0 else cfg.continuation.tau_step)
    trace = trace_stable_branch(start, tau_hi, seeded_history(start, spec.seed_spikes), cfg, dt=spec.dt)
    dataset = Dataset("branches", ["n", "tau", "T", "gamma", "stability"])
    for pt in trace.points:
        dataset.rows.append((pt.n, pt.tau, pt.period, "", "stable"))
    dataset.meta = {
        "model": spec.model,
        "current": spec.signed_current,
        "kappa": kappa,
        "seed_spikes": spec.seed_spikes,
        "lost": [{"tau": tau, "reason": reason} for tau, reason in trace.ends],
    }
    return dataset


# ---------- saddle-node / homoclinic curves ----------

def cmd_sncurves(spec: JobSpec, config: Optional[ThetaConfig] = None) -> Dataset:
    """(n, kind, sign, kappa, tau, T)：折叠曲线、同宿曲线（兴奋态 n = 0）与尖点。"""
    a = _scales(spec)
    lo, hi = spec.kappa_range or DEFAULT_KAPPA_RANGE[spec.regime]
    kappas = np.linspace(lo / a, hi / a, spec.grid)
    dataset = Dataset("sncurves", ["n", "kind", "sign", "kappa", "tau", "T"])

    def emit(locus: SaddleNodeLocus) -> None:
        for kappa, tau, period in locus.samples:
            dataset.rows.append((locus.n, locus.kind, locus.sign or "", kappa * a, tau / a, period / a))

    for n in spec.n_values:
        if spec.regime is Regime.NEGATIVE:
            emit(homoclinic_locus(kappas) if n == 0 else saddle_node_locus(n, kappas))
            continue
        if n == 0:
            logger.info("sncurves: the positive-current primary branch has no folds")
            continue
        for sign in (FoldSign.MINUS, FoldSign.PLUS):
            emit(saddle_node_locus_pos(n, kappas, sign))
        for coupling in (Coupling.EXCITATORY, Coupling.INHIBITORY):
            cusp = cusp_point(n, coupling)
            dataset.rows.append((n, "cusp", "", cusp.kappa * a, cusp.tau / a, ""))

    dataset.meta = {"regime": spec.regime, "current": spec.signed_current, "kappa_range": [lo, hi]}
    logger.info(f"sncurves: {len(dataset.rows)} rows")
    return dataset


# ---------- Floquet multipliers ----------

MULTIPLIER_COLUMNS = ["n", "tau", "T", "gamma", "root", "re", "im", "modulus", "stability"]


def cmd_multipliers(spec: JobSpec, config: Optional[ThetaConfig] = None) -> Dataset:
    """
    --gamma 给定时扫描 gamma；否则在 (kappa, tau) 处求各支周期解并列出它们的全部乘子。
    """
    cfg = config or ThetaConfig.default()
    dataset = Dataset("multipliers", MULTIPLIER_COLUMNS)
    if spec.gamma_range is not None:
        lo, hi = spec.gamma_range
        gammas = [lo] if lo == hi else np.linspace(lo, hi, spec.grid).tolist()
        for n in spec.n_values:
            for gamma in gammas:
                _emit_roots(dataset, n, "", "", gamma, cfg)
        dataset.meta = {"gamma_range": [lo, hi], "n": list(spec.n_values)}
        return dataset

    kappa = _require_kappa(spec)
    if spec.tau_range is None or spec.tau_range[0] != spec.tau_range[1]:
        raise UsageError("multipliers: give a single --tau value (or use --gamma)")
    params = ModelParams(spec.signed_current, kappa, spec.tau_range[0])
    unit = params.normalized()
    a = params.magnitude
    solver = solve_branch if params.regime is Regime.NEGATIVE else solve_branch_pos
    for n in spec.n_values:
        for point in solver(n, unit.tau, unit.kappa, cfg):
            _emit_roots(dataset, n, params.tau, point.period / a, point.gamma, cfg)
    if not dataset.rows:
        raise NoSolutionError(f"no periodic solution on branches {list(spec.n_values)} at {params}")
    dataset.meta = {"current": params.current, "kappa": kappa, "tau": params.tau, "n": list(spec.n_values)}
    return dataset


def _emit_roots(dataset: Dataset, n: int, tau, period, gamma: float, cfg: ThetaConfig) -> None:
    stability = classify(n, gamma, cfg) if gamma > 0 else Stability.NEUTRAL
    for k, root in enumerate(g_roots(n, gamma)):
        dataset.rows.append((n, tau, period, gamma, k, root.real, root.imag, abs(root), stability))


# ---------- simulation ----------

def cmd_simulate(spec: JobSpec, config: Optional[ThetaConfig] = None) -> Dataset:
    """(t, theta) 采样；元数据是事件日志（delta）或运行摘要（smooth）。"""
    cfg = config or ThetaConfig.default()
    kappa = _require_kappa(spec)
    if spec.tau_range is None or spec.tau_range[0] != spec.tau_range[1]:
        raise UsageError("simulate: give a single --tau value")
    params = ModelParams(spec.signed_current, kappa, spec.tau_range[0])

    if spec.model is Model.SMOOTH:
        run = simulate_smooth(params, seeded_history(params, spec.seed_spikes), spec.horizon, cfg, dt=spec.dt)
        rows = [(t, wrap_phase(theta)) for t, theta in zip(run.sample_times.tolist(), run.sample_thetas.tolist())]
        return Dataset("dde_trajectory", ["t", "theta"], rows, run_summary(run))

    if spec.seed_spikes < 1:
        raise UsageError("simulate --model delta needs --seed-spikes >= 1")
    horizon = spec.horizon or cfg.events.horizon_delays * params.tau
    history = equispaced_history(params.tau, spec.seed_spikes)
    traj = simulate(params, history, horizon, cfg)
    times, thetas = sample_phases(traj, cfg.events.sample_dt)
    meta = event_log(traj)
    # 周期在续跑到收敛的轨迹上测量，输出窗口仍是 [0, horizon]
    settled = settle(params, history, cfg, horizon)
    meta["period"], meta["n"] = settled.period, settled.n
    meta["settled_at"] = settled.trajectory.t_end_sim if settled.periodic else None
    if not settled.periodic:
        logger.warning(f"simulate: {settled.reason}")
    return Dataset("event_trajectory", ["t", "theta"], list(zip(times.tolist(), thetas.tolist())), meta)
