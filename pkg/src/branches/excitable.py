# excitable.py
# =========================
# 兴奋态分支（Excitable regime, I = -1）
# 存在方程、主分支、重现映射、同宿点、鞍结点、超稳定点
# 一般 I_m 由调用方按 ModelParams.normalized() 缩放
# =========================

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..config import ThetaConfig
from ..errors import DomainError, NoPulsationError, NoSolutionError, ParameterError
from ..neuron.types import check_branch_index
from ..stability.firing_map import (
    gamma_at_lag_negative,
    gamma_negative,
    periodic_residual_negative,
    periodic_residual_negative_dT,
)
from ..stability.floquet import classify
from .roots import scan_roots
from .types import BranchPoint, LocusKind, SaddleNodeLocus


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _acoth(x: float) -> float:
    return math.atanh(1.0 / x)


def _require_pulsation(kappa: float) -> None:
    if not kappa > 2.0:
        raise NoPulsationError(f"kappa={kappa}: self-sustained pulsation needs kappa > 2")


def homoclinic_tau(kappa: float) -> float:
    """tau* = acoth(kappa - 1)：被踢的轨道恰好落在鞍点 theta_+ 上。"""
    _require_pulsation(kappa)
    return _acoth(kappa - 1.0)


def primary_branch_T(tau: float, kappa: float) -> float:
    """n = 0：T = tau + acoth(kappa - coth(tau))，tau > tau*。"""
    _require_pulsation(kappa)
    star = homoclinic_tau(kappa)
    if not tau > star:
        raise NoSolutionError(f"tau={tau} is at or below the homoclinic point {star}")
    return tau + _acoth(kappa - _coth(tau))


def primary_branch_slope(tau: float, kappa: float) -> float:
    """dT/dtau = 1 + (coth^2 tau - 1) / (1 - (kappa - coth tau)^2)。"""
    _require_pulsation(kappa)
    c = _coth(tau)
    return 1.0 + (c * c - 1.0) / (1.0 - (kappa - c) ** 2)


def branch_point_from_lag(
    n: int,
    lag: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> BranchPoint:
    """
    由滞后 s = tau - nT 构造第 n 支上的点：T = T_0(s)，tau = s + nT。
    """
    period = primary_branch_T(lag, kappa)
    gamma = float(gamma_at_lag_negative(kappa, lag))
    return BranchPoint(
        n=n,
        tau=lag + n * period,
        period=period,
        gamma=gamma,
        stability=classify(n, gamma, config),
        kappa=kappa,
    )


def branch_point(
    n: int,
    tau: float,
    period: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> BranchPoint:
    """校验 (n, tau, T) 在分支上后计算 gamma 与稳定性。"""
    gamma = gamma_negative(n, period, tau, kappa, config)
    return BranchPoint(
        n=n,
        tau=tau,
        period=period,
        gamma=gamma,
        stability=classify(n, gamma, config),
        kappa=kappa,
    )


def solve_branch(
    n: int,
    tau: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> List[BranchPoint]:
    """
    第 n 支在给定 tau 下的全部周期解（T 升序）。
    n >= 1 时在 (tau/(n+1), tau/n) 上扫描；残差两端都趋于 +inf，根成对出现。
    """
    check_branch_index(n)
    if not tau > 0:
        raise ParameterError(f"tau must be positive, got {tau}")
    cfg = config or ThetaConfig.default()
    if not kappa > 2.0:
        return []

    if n == 0:
        if not tau > homoclinic_tau(kappa):
            return []
        return [branch_point(0, tau, primary_branch_T(tau, kappa), kappa, cfg)]

    eps = cfg.roots.endpoint_eps * tau
    roots = scan_roots(
        lambda T: periodic_residual_negative(n, T, tau, kappa),
        tau / (n + 1) + eps,
        tau / n - eps,
        cfg.roots,
        derivative=lambda T: periodic_residual_negative_dT(n, T, tau),
    )
    points = []
    for period in roots:
        gamma = float(gamma_at_lag_negative(kappa, tau - n * period))
        points.append(BranchPoint(n, tau, period, gamma, classify(n, gamma, cfg), kappa))
    logger.debug(f"branch n={n} tau={tau} kappa={kappa}: {len(points)} roots")
    return points


def default_lags(
    kappa: float,
    lag_max: float,
    points: int = 400,
    near_fraction: float = 0.25,
) -> np.ndarray:
    """
    参数化用的 s 网格：渐近线附近对数加密，其余线性。
    """
    star = homoclinic_tau(kappa)
    if not lag_max > star:
        raise ParameterError(f"lag_max={lag_max} must exceed tau*={star}")
    span = lag_max - star
    near_count = max(int(points * near_fraction), 2)
    near = star + np.geomspace(span * 1e-6, span * 0.05, near_count, endpoint=False)
    far = np.linspace(star + span * 0.05, lag_max, max(points - near_count, 2))
    return np.concatenate([near, far])


def branch_parametric(
    n: int,
    kappa: float,
    s_grid: Iterable[float],
    config: Optional[ThetaConfig] = None,
) -> List[BranchPoint]:
    """(tau, T) = (s + nT(s), T(s))：把主分支推到第 n 支，稳定与不稳定两侧都有。"""
    check_branch_index(n)
    _require_pulsation(kappa)
    star = homoclinic_tau(kappa)
    points = []
    for lag in s_grid:
        lag = float(lag)
        if not lag > star:
            raise DomainError(f"lag s={lag} is not above the homoclinic point {star}")
        points.append(branch_point_from_lag(n, lag, kappa, config))
    return points


def superstable_point(n: int, kappa: float) -> Tuple[float, float]:
    """gamma = 1：T = 2 acoth(kappa/2)，tau = (2n+1) T / 2；此处 dT/dtau = 0。"""
    check_branch_index(n)
    _require_pulsation(kappa)
    period = 2.0 * _acoth(kappa / 2.0)
    return (2 * n + 1) * period / 2.0, period


def saddle_node_point(n: int, kappa: float) -> Tuple[float, float, float]:
    """
    第 n 支的折叠点 (tau_0, T, tau)：
    coth(tau_0) = kappa(1+n) - sqrt(1 + kappa^2 (n^2+n))，tau = tau_0 + nT。
    """
    check_branch_index(n, minimum=1)
    _require_pulsation(kappa)
    root = math.sqrt(1.0 + kappa * kappa * (n * n + n))
    tau0 = _acoth(kappa * (1 + n) - root)
    period = tau0 + _acoth(root - kappa * n)
    return tau0, period, tau0 + n * period


def saddle_node_locus(
    n: int,
    kappas: Sequence[float],
) -> SaddleNodeLocus:
    """kappa <= 2 的样本跳过。"""
    locus = SaddleNodeLocus(n=n, kind=LocusKind.SADDLE_NODE)
    for kappa in kappas:
        if not kappa > 2.0:
            logger.warning(f"saddle-node locus n={n}: kappa={kappa} has no pulsating branch, skipped")
            continue
        _, period, tau = saddle_node_point(n, kappa)
        locus.samples.append((float(kappa), tau, period))
    return locus


def homoclinic_locus(kappas: Sequence[float]) -> SaddleNodeLocus:
    """n = 0 的同宿曲线 tau*(kappa)，周期为无穷。"""
    locus = SaddleNodeLocus(n=0, kind=LocusKind.HOMOCLINIC)
    for kappa in kappas:
        if not kappa > 2.0:
            logger.warning(f"homoclinic locus: kappa={kappa} has no pulsating branch, skipped")
            continue
        locus.samples.append((float(kappa), homoclinic_tau(kappa), math.inf))
    return locus


def gamma_monotonicity_violations(points: Sequence[BranchPoint]) -> List[int]:
    """
    返回 gamma 相对整体趋势反向变化的位置 i（gamma[i] -> gamma[i+1]）。
    """
    gammas = np.array([p.gamma for p in points], dtype=float)
    if gammas.size < 3:
        return []
    trend = np.sign(gammas[-1] - gammas[0])
    if trend == 0:
        return []
    steps = np.diff(gammas)
    return [int(i) for i in np.nonzero(np.sign(steps) == -trend)[0]]

