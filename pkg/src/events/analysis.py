# analysis.py
# =========================
# 轨迹分析（Trajectory analysis）
# 周期测量、精确周期历史、吸引域探测、扰动衰减率
# =========================

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..branches.excitable import solve_branch
from ..branches.oscillatory import solve_branch_pos
from ..branches.types import BranchPoint
from ..config import ThetaConfig
from ..errors import NoSolutionError, NotPeriodicError, ParameterError
from ..neuron.types import ModelParams, Regime, check_branch_index
from .simulator import resume, simulate
from .types import BasinKind, BasinOutcome, EventTrajectory, InitialHistory, SettledRun, TrajectoryStatus


def periodic_orbits(
    params: ModelParams,
    n: int,
    config: Optional[ThetaConfig] = None,
) -> List[BranchPoint]:
    """
    物理单位下第 n 支的周期解：先按 |I| = 1 归一化求解，再把周期缩放回 T / sqrt|I|。
    """
    check_branch_index(n)
    unit = params.normalized()
    if params.regime is Regime.NEGATIVE:
        points = solve_branch(n, unit.tau, unit.kappa, config)
    else:
        points = solve_branch_pos(n, unit.tau, unit.kappa, config)
    a = params.magnitude
    return [
        BranchPoint(p.n, params.tau, p.period / a, p.gamma, p.stability, params.kappa)
        for p in points
    ]


def stable_orbit(params: ModelParams, n: int, config: Optional[ThetaConfig] = None) -> BranchPoint:
    """第 n 支上的吸引周期解；多个时取周期最小者。"""
    for point in periodic_orbits(params, n, config):
        if point.stability.is_attracting:
            return point
    raise NoSolutionError(f"no stable n={n} orbit at {params}")


def seed_periodic_history(point: BranchPoint, n: Optional[int] = None) -> InitialHistory:
    """
    t = 0 刚放电，过去放电 0, -T, ..., -nT，均落在 (-tau, 0]；瞬态只剩舍入误差。
    """
    n = point.n if n is None else n
    seeds = tuple(-(n - k) * point.period for k in range(n + 1))
    return InitialHistory(seed_firings=seeds, theta0=math.pi)


def equispaced_history(tau: float, spikes: int) -> InitialHistory:
    """k 个等距种子放电 t_j = -j tau / k（j = 0..k-1），t = 0 刚放电。"""
    if spikes < 1:
        raise ParameterError(f"need at least one seed spike, got {spikes}")
    seeds = tuple(sorted(-j * tau / spikes for j in range(spikes)))
    return InitialHistory(seed_firings=seeds, theta0=math.pi)


def spikes_per_delay(firing_times: Sequence[float], tau: float) -> int:
    """(t_last - tau, t_last] 内的放电数减一，即分支序号 n。"""
    if not firing_times:
        raise NotPeriodicError("no firings")
    last = firing_times[-1]
    return sum(1 for t in firing_times if last - tau < t <= last) - 1


def measure_period(
    traj: EventTrajectory,
    transient: Optional[float] = None,
    config: Optional[ThetaConfig] = None,
) -> Tuple[float, int]:
    """
    瞬态之后的平均放电间隔 T 与 n；ISI 标准差需小于 isi_rel_tol * T。
    """
    cfg = (config or ThetaConfig.default()).events
    if transient is None:
        transient = cfg.transient_fraction * traj.t_end_sim
    firings = [t for t in traj.firing_times if t > transient]
    if len(firings) < cfg.min_firings:
        raise NotPeriodicError(f"only {len(firings)} firings after t={transient}")
    isi = np.diff(firings)
    period = float(np.mean(isi))
    spread = float(np.std(isi))
    if not spread < cfg.isi_rel_tol * period:
        raise NotPeriodicError(f"ISI spread {spread:.3e} exceeds {cfg.isi_rel_tol:g} * T")
    return period, spikes_per_delay(firings, traj.params.tau)


def settle(
    params: ModelParams,
    history: InitialHistory,
    config: Optional[ThetaConfig] = None,
    horizon: Optional[float] = None,
) -> SettledRun:
    """
    先仿真 horizon（默认 horizon_delays * tau）；ISI 尚未收敛就把时长加倍续跑，
    直到收敛、活动停止或达到 max_horizon_delays * tau。
    乘子接近 1 的弱稳定解需要很长的时间才能满足 isi_rel_tol。
    """
    cfg = config or ThetaConfig.default()
    t_end = horizon if horizon is not None else cfg.events.horizon_delays * params.tau
    t_max = max(t_end, cfg.events.max_horizon_delays * params.tau)
    traj = simulate(params, history, t_end, cfg)
    while True:
        try:
            period, n = measure_period(traj, config=cfg)
            return SettledRun(traj, period, n)
        except NotPeriodicError as exc:
            if traj.status is not TrajectoryStatus.ACTIVE or traj.t_end_sim >= t_max:
                logger.info(f"settle {params}: {exc.reason} at t={traj.t_end_sim}")
                return SettledRun(traj, reason=exc.reason)
        traj = resume(traj, min(2.0 * traj.t_end_sim, t_max), cfg)
        logger.debug(f"settle {params}: extended to t={traj.t_end_sim}")


def perturbed_history(point: BranchPoint, perturbation: float, tau: float) -> InitialHistory:
    """
    把精确周期历史中最早的种子放电移动 perturbation。
    移出 (-tau, 0] 时整体平移，让最晚的放电落在 t = 0；平移后早于 -tau 的放电已送达，丢弃。
    """
    seeds = list(seed_periodic_history(point).seed_firings)
    seeds[0] += perturbation
    latest = max(seeds)
    shifted = sorted({t - latest for t in seeds if t - latest > -tau})
    return InitialHistory(seed_firings=tuple(shifted), theta0=math.pi)


def basin_probe(
    params: ModelParams,
    n_target: int,
    perturbation: float,
    config: Optional[ThetaConfig] = None,
    recover_tol: float = 1e-6,
) -> BasinOutcome:
    """
    在第 n_target 支的精确周期历史上扰动一次放电，续跑到收敛后判定归宿：
    RECOVERED（回到原周期解）、SWITCHED（收敛到别的周期解）、DIED、UNSETTLED。
    """
    cfg = config or ThetaConfig.default()
    point = stable_orbit(params, n_target, cfg)
    run = settle(params, perturbed_history(point, perturbation, params.tau), cfg)

    if run.trajectory.status is not TrajectoryStatus.ACTIVE:
        logger.info(f"basin probe n={n_target} delta={perturbation}: activity died ({run.trajectory.status.value})")
        return BasinOutcome(BasinKind.DIED)
    if not run.periodic:
        logger.info(f"basin probe n={n_target} delta={perturbation}: unsettled ({run.reason})")
        return BasinOutcome(BasinKind.UNSETTLED)

    if run.n == n_target and abs(run.period - point.period) <= recover_tol * point.period:
        return BasinOutcome(BasinKind.RECOVERED, run.n)
    logger.info(f"basin probe n={n_target} delta={perturbation}: switched to n={run.n}, T={run.period}")
    return BasinOutcome(BasinKind.SWITCHED, run.n)


def decay_ratio(
    firing_times: Sequence[float],
    period: float,
    floor: float = 1e-12,
) -> float:
    """
    ISI 偏差 |ISI_k - T| 的几何衰减率：对 log|e_k| 做线性拟合，返回 exp(斜率)。
    低于 floor * T 的偏差视为舍入噪声丢弃。
    """
    deviations = np.abs(np.diff(np.asarray(firing_times, dtype=float)) - period)
    index = np.nonzero(deviations > floor * period)[0]
    if index.size < 3:
        raise NotPeriodicError("too few resolvable deviations to fit a decay rate")
    slope, _ = np.polyfit(index, np.log(deviations[index]), 1)
    return float(math.exp(slope))
