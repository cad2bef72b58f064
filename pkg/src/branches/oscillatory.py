# oscillatory.py
# =========================
# 振荡态分支（Oscillatory regime, I = +1）
# 兴奋性 (kappa > 0) 与抑制性 (kappa < 0) 反馈；旋转对称、鞍结点曲线与尖点
# =========================

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..config import ThetaConfig
from ..errors import DomainError, NoFoldError, ParameterError
from ..neuron.types import check_branch_index
from ..stability.firing_map import (
    gamma_at_lag_positive,
    gamma_positive,
    periodic_residual_positive,
    periodic_residual_positive_dT,
)
from ..stability.floquet import classify
from .roots import scan_roots
from .types import BranchPoint, Coupling, CuspPoint, FoldSign, LocusKind, SaddleNodeLocus


def _acot(x: float) -> float:
    """值域 (0, pi)。"""
    return math.atan2(1.0, x)


def _lag_shift(kappa: float, lag: float) -> float:
    """acot(kappa - cot s)，s in [0, pi] 上连续。"""
    sin_s = math.sin(lag)
    return math.atan2(sin_s, kappa * sin_s - math.cos(lag))


def primary_branch_T_pos(tau: float, kappa: float) -> float:
    """
    n = 0：T = tau + acot(kappa - cot tau)，0 <= tau <= pi；两端 T = pi。
    """
    if not 0.0 <= tau <= math.pi:
        raise DomainError(f"tau={tau} is outside [0, pi]; use the reappearance map")
    if tau == 0.0 or tau == math.pi:
        return math.pi
    return tau + _lag_shift(kappa, tau)


def primary_branch_slope_pos(tau: float, kappa: float) -> float:
    """dT/dtau = 1 - gamma(tau)。"""
    if not 0.0 <= tau <= math.pi:
        raise DomainError(f"tau={tau} is outside [0, pi]")
    return 1.0 - float(gamma_at_lag_positive(kappa, tau))


def branch_point_from_lag_pos(
    n: int,
    lag: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> BranchPoint:
    period = primary_branch_T_pos(lag, kappa)
    gamma = float(gamma_at_lag_positive(kappa, lag))
    return BranchPoint(
        n=n,
        tau=lag + n * period,
        period=period,
        gamma=gamma,
        stability=classify(n, gamma, config),
        kappa=kappa,
    )


def branch_point_pos(
    n: int,
    tau: float,
    period: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> BranchPoint:
    gamma = gamma_positive(n, period, tau, kappa, config)
    return BranchPoint(n, tau, period, gamma, classify(n, gamma, config), kappa)


def solve_branch_pos(
    n: int,
    tau: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> List[BranchPoint]:
    """
    第 n 支在给定 tau 下的全部根；窗口还要求滞后 s = tau - nT 落在 (0, pi)。
    倾斜的次级分支上最多三个根（稳定-不稳定-稳定）。
    """
    check_branch_index(n)
    if not tau > 0:
        raise ParameterError(f"tau must be positive, got {tau}")
    cfg = config or ThetaConfig.default()

    if n == 0:
        if tau > math.pi:
            return []
        return [branch_point_from_lag_pos(0, tau, kappa, cfg)]

    eps = cfg.roots.endpoint_eps * tau
    lo = max(tau / (n + 1), (tau - math.pi) / n) + eps
    hi = tau / n - eps
    roots = scan_roots(
        lambda T: periodic_residual_positive(n, T, tau, kappa),
        lo,
        hi,
        cfg.roots,
        derivative=lambda T: periodic_residual_positive_dT(n, T, tau, kappa),
    )
    points = []
    for period in roots:
        gamma = float(gamma_at_lag_positive(kappa, tau - n * period))
        points.append(BranchPoint(n, tau, period, gamma, classify(n, gamma, cfg), kappa))
    logger.debug(f"branch(pos) n={n} tau={tau} kappa={kappa}: {len(points)} roots")
    return points


def default_lags_pos(points: int = 400) -> np.ndarray:
    """(0, pi) 上的开网格，端点处是相邻分支的衔接点 (n pi, pi)。"""
    return np.linspace(0.0, math.pi, points + 2)[1:-1]


def branch_parametric_pos(
    n: int,
    kappa: float,
    s_grid: Iterable[float],
    config: Optional[ThetaConfig] = None,
) -> List[BranchPoint]:
    check_branch_index(n)
    points = []
    for lag in s_grid:
        lag = float(lag)
        if not 0.0 <= lag <= math.pi:
            raise DomainError(f"lag s={lag} is outside [0, pi]")
        points.append(branch_point_from_lag_pos(n, lag, kappa, config))
    return points


def rotate_branch(points: Sequence[BranchPoint], n: int) -> List[BranchPoint]:
    """
    kappa -> -kappa 的对称：(tau, T) -> (2(n + 1/2) pi - tau, 2 pi - T)，gamma 不变。
    """
    check_branch_index(n)
    rotated = []
    for p in points:
        if p.n != n:
            raise ParameterError(f"point on branch {p.n} passed to rotation of branch {n}")
        rotated.append(
            BranchPoint(
                n=n,
                tau=(2 * n + 1) * math.pi - p.tau,
                period=2.0 * math.pi - p.period,
                gamma=p.gamma,
                stability=p.stability,
                kappa=-p.kappa,
            )
        )
    return rotated


def superstable_point_pos(n: int, kappa: float) -> Tuple[float, float]:
    """
    gamma = 1 的点 ((n + 1/2) Tbar, Tbar)，Tbar = 2 acot(kappa/2)。
    kappa > 0 时为各支极小值，kappa < 0 时为极大值。
    """
    check_branch_index(n)
    period = 2.0 * _acot(kappa / 2.0)
    return (n + 0.5) * period, period


def branch_maximum_pos(n: int, kappa: float) -> Tuple[float, float]:
    """抑制性反馈下第 n 支的极大值：kappa = K 处极小值的旋转像。"""
    if not kappa < 0:
        raise DomainError("for kappa > 0 the maxima are the transition points (n pi, pi)")
    minimum_tau, minimum_T = superstable_point_pos(n, -kappa)
    return (2 * n + 1) * math.pi - minimum_tau, 2.0 * math.pi - minimum_T


def transition_point_pos(n: int) -> Tuple[float, float]:
    """兴奋性反馈下第 n-1 支与第 n 支在 (n pi, pi) 处相接。"""
    check_branch_index(n)
    return n * math.pi, math.pi


def _fold_from_cot(n: int, kappa: float, cot_tau0: float) -> Tuple[float, float, float]:
    tau0 = _acot(cot_tau0)
    period = primary_branch_T_pos(tau0, kappa)
    return tau0, period, tau0 + n * period


def saddle_node_point_pos(n: int, kappa: float, sign: FoldSign) -> Tuple[float, float, float]:
    """
    tau_0 = acot(kappa(n+1) +- sqrt(kappa^2 (n^2+n) - 1))，T = T_0(tau_0)，tau = tau_0 + nT。
    """
    check_branch_index(n, minimum=1)
    disc = kappa * kappa * (n * n + n) - 1.0
    if not disc > 0:
        raise NoFoldError(f"kappa={kappa}, n={n}: kappa^2 (n^2+n) <= 1, no saddle-node")
    root = math.sqrt(disc)
    offset = root if sign is FoldSign.PLUS else -root
    return _fold_from_cot(n, kappa, kappa * (n + 1) + offset)


def saddle_node_locus_pos(n: int, kappas: Sequence[float], sign: FoldSign) -> SaddleNodeLocus:
    locus = SaddleNodeLocus(n=n, kind=LocusKind.SADDLE_NODE, sign=sign)
    for kappa in kappas:
        try:
            _, period, tau = saddle_node_point_pos(n, kappa, sign)
        except NoFoldError:
            logger.debug(f"saddle-node locus(pos) n={n}: no fold at kappa={kappa}")
            continue
        locus.samples.append((float(kappa), tau, period))
    return locus


def cusp_point(n: int, coupling: Coupling) -> CuspPoint:
    """
    kappa^2 (n^2+n) = 1 处两条折叠曲线相遇。
    抑制性尖点是兴奋性尖点绕 ((n + 1/2) pi, 0) 旋转的像。
    """
    check_branch_index(n, minimum=1)
    kappa = 1.0 / math.sqrt(n * n + n)
    _, _, tau = _fold_from_cot(n, kappa, kappa * (n + 1))
    if coupling is Coupling.INHIBITORY:
        tau, kappa = fold_curve_rotation(n, tau, kappa)
    return CuspPoint(n=n, tau=tau, kappa=kappa)


def fold_curve_rotation(n: int, tau: float, kappa: float) -> Tuple[float, float]:
    """(tau, kappa) -> ((2n+1) pi - tau, -kappa)。"""
    return (2 * n + 1) * math.pi - tau, -kappa
