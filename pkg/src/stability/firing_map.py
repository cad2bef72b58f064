# firing_map.py
# =========================
# 放电时间映射（Firing-time maps）
# t_i = F(t_{i-1}, t_{i-n-1})：两种电流下的显式映射、周期条件残差、gamma
# 时间单位已按 |I| = 1 归一化
# =========================

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from ..config import ThetaConfig
from ..errors import ConsistencyError, DomainError
from ..neuron.types import Regime
from ..neuron import trig
from .floquet import companion_jacobian


# ---------- 显式映射 ----------

def next_firing_negative(t_prev: float, t_delayed: float, tau: float, kappa: float) -> float:
    """
    I = -1：上次放电 t_prev 之后，t_delayed 发出的脉冲在 t_delayed + tau 到达，
    t_i = t_delayed + tau + acoth(kappa - coth(s))，s = t_delayed + tau - t_prev。
    """
    s = t_delayed + tau - t_prev
    if not s > 0:
        raise DomainError(f"kick at lag s={s} does not follow the last firing")
    kicked = kappa - 1.0 / math.tanh(s)
    if not kicked > 1.0:
        raise DomainError(f"kick at lag s={s} leaves the neuron below threshold")
    return t_delayed + tau + math.atanh(1.0 / kicked)


def next_firing_positive(t_prev: float, t_delayed: float, tau: float, kappa: float) -> float:
    """
    I = +1：t_i = t_delayed + tau + acot(kappa - cot(s))，要求 s in (0, pi)，
    即脉冲在下一次自由放电之前到达。
    """
    s = t_delayed + tau - t_prev
    if not 0.0 < s < math.pi:
        raise DomainError(f"kick at lag s={s} is outside (0, pi)")
    sin_s = math.sin(s)
    return t_delayed + tau + math.atan2(sin_s, kappa * sin_s - math.cos(s))


def next_firing(regime: Regime, t_prev: float, t_delayed: float, tau: float, kappa: float) -> float:
    if regime is Regime.NEGATIVE:
        return next_firing_negative(t_prev, t_delayed, tau, kappa)
    return next_firing_positive(t_prev, t_delayed, tau, kappa)


def numerical_jacobian_row(
    n: int,
    period: float,
    tau: float,
    kappa: float,
    regime: Regime,
    step: float = 1e-6,
) -> np.ndarray:
    """
    在周期解 (t_{i-n-1}, ..., t_{i-1}) = (0, T, ..., nT) 处对映射做中心差分，
    返回 (dF/dt_{i-n-1}, ..., dF/dt_{i-1})。
    """
    history = np.arange(n + 1, dtype=float) * period

    def mapped(past: np.ndarray) -> float:
        return next_firing(regime, past[-1], past[0], tau, kappa)

    row = np.zeros(n + 1)
    for k in range(n + 1):
        plus = history.copy()
        minus = history.copy()
        plus[k] += step
        minus[k] -= step
        row[k] = (mapped(plus) - mapped(minus)) / (2.0 * step)
    return row


# ---------- 周期条件 ----------

def periodic_residual_negative(n: int, period, tau: float, kappa: float):
    """coth((n+1)T - tau) - kappa - coth(nT - tau)；标量或数组。"""
    period = np.asarray(period, dtype=float)
    value = trig.coth((n + 1) * period - tau) - kappa - trig.coth(n * period - tau)
    return float(value) if value.ndim == 0 else value


def periodic_residual_negative_dT(n: int, period, tau: float):
    period = np.asarray(period, dtype=float)
    value = -(n + 1) * trig.csch2((n + 1) * period - tau) + n * trig.csch2(n * period - tau)
    return float(value) if value.ndim == 0 else value


def periodic_residual_positive(n: int, period, tau: float, kappa: float):
    """(n+1)T - tau - acot(kappa - cot(tau - nT))，acot 取 (0, pi)。"""
    period = np.asarray(period, dtype=float)
    lag = tau - n * period
    value = (n + 1) * period - tau - trig.acot_of_cot_shift(kappa, lag)
    return float(value) if value.ndim == 0 else value


def periodic_residual_positive_dT(n: int, period, tau: float, kappa: float):
    period = np.asarray(period, dtype=float)
    value = (n + 1) - n * gamma_at_lag_positive(kappa, tau - n * period)
    return float(value) if value.ndim == 0 else value


def periodic_residual(regime: Regime, n: int, period, tau: float, kappa: float):
    if regime is Regime.NEGATIVE:
        return periodic_residual_negative(n, period, tau, kappa)
    return periodic_residual_positive(n, period, tau, kappa)


# ---------- gamma ----------

def gamma_at_lag_negative(kappa: float, lag):
    """gamma 只依赖于 s = tau - nT。"""
    c = trig.coth(lag)
    return (c * c - 1.0) / ((kappa - c) ** 2 - 1.0)


def gamma_at_lag_positive(kappa: float, lag):
    sin_s = np.sin(lag)
    return 1.0 / (sin_s ** 2 + (kappa * sin_s - np.cos(lag)) ** 2)


def gamma_negative(
    n: int,
    period: float,
    tau: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> float:
    _require_on_branch(periodic_residual_negative, n, period, tau, kappa, config)
    return float(gamma_at_lag_negative(kappa, tau - n * period))


def gamma_positive(
    n: int,
    period: float,
    tau: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> float:
    _require_on_branch(periodic_residual_positive, n, period, tau, kappa, config)
    return float(gamma_at_lag_positive(kappa, tau - n * period))


def gamma_for(
    regime: Regime,
    n: int,
    period: float,
    tau: float,
    kappa: float,
    config: Optional[ThetaConfig] = None,
) -> float:
    if regime is Regime.NEGATIVE:
        return gamma_negative(n, period, tau, kappa, config)
    return gamma_positive(n, period, tau, kappa, config)


def firing_map_jacobian(
    n: int,
    period: float,
    tau: float,
    kappa: float,
    regime: Regime,
    config: Optional[ThetaConfig] = None,
) -> np.ndarray:
    """分支点处的 J；F_1 = gamma，F_{n+1} = 1 - gamma，其余为 0。"""
    return companion_jacobian(n, gamma_for(regime, n, period, tau, kappa, config))


def _require_on_branch(
    residual: Callable,
    n: int,
    period: float,
    tau: float,
    kappa: float,
    config: Optional[ThetaConfig],
) -> None:
    tol = (config or ThetaConfig.default()).stability.consistency_tol
    value = residual(n, period, tau, kappa)
    if not abs(value) <= tol * max(1.0, abs(kappa)):
        raise ConsistencyError(
            f"(n={n}, T={period}, tau={tau}, kappa={kappa}) is off the branch: residual {value:.3e}"
        )

