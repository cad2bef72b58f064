# integrator.py
# =========================
# 光滑反馈 DDE 积分器（Method of steps）
# dtheta/dt = 1 - cos theta + (1 + cos theta) (I + kappa P(theta(t - tau)))
# 固定步长 RK4，步长整除 tau，延迟量取自环形缓冲区，半步处用三次 Hermite 插值
# =========================

from __future__ import annotations

import copy
import math
from typing import Callable, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.interpolate import CubicHermiteSpline

from ..config import ThetaConfig
from ..errors import DomainError, NumericalFailure, ParameterError
from ..neuron.types import ModelParams
from .attractor import summarize_run
from .pulse import pulse_normalization
from .spikes import TWO_PI, crossing_index, locate_crossing
from .types import DdeRun


History = Callable[[float], float]

MAX_STEPS_PER_DELAY = 50_000_000


def step_size(tau: float, dt: Optional[float] = None, config: Optional[ThetaConfig] = None) -> Tuple[float, int]:
    """返回 (dt, m)，dt = tau / m，且不超过目标步长。"""
    cfg = config or ThetaConfig.default()
    target = dt if dt is not None else min(cfg.smooth.dt_fraction * tau, cfg.smooth.dt_max)
    if not (math.isfinite(target) and target > 0.0):
        raise ParameterError(f"step size must be positive, got {target}")
    steps = math.ceil(tau / target * (1.0 - 1e-12))
    steps = max(steps, 1)
    if steps > MAX_STEPS_PER_DELAY:
        raise NumericalFailure(f"step size {target} underflows the delay buffer (tau={tau})")
    return tau / steps, steps


def rest_phase(current: float) -> float:
    """I < 0 时为稳定结点 theta_-；I > 0 没有静息态，取 -pi/2 作基线。"""
    if current < 0.0:
        return -2.0 * math.atan(math.sqrt(-current))
    return -0.5 * math.pi


def constant_history(theta: float) -> History:
    return lambda t: theta


def seeded_history(params: ModelParams, spikes: int, baseline: Optional[float] = None) -> History:
    """
    在 (-tau, 0] 上等距放置 spikes 个平滑上升沿：
    theta_h(t) = theta_- + sum_j (pi + 2 atan(t - t_j))，t_j = -j tau / spikes。
    每个上升沿在 t_j 处以斜率 2 穿过 pi；spikes = 0 即静息历史。
    """
    if spikes < 0:
        raise ParameterError(f"spikes must be >= 0, got {spikes}")
    base = rest_phase(params.current) if baseline is None else float(baseline)
    if spikes == 0:
        return constant_history(base)
    seeds = [-j * params.tau / spikes for j in range(spikes)]

    def history(t: float) -> float:
        return base + sum(math.pi + 2.0 * math.atan(t - tj) for tj in seeds)

    return history


class DdeIntegrator:
    """
    缓冲区长度 size = ceil(keep_delays * m) + 1，至少覆盖一个完整延迟。
    每个槽位保存 theta、导数（供 Hermite 插值）和脉冲值 P(theta)。
    第一个延迟内的延迟项直接取历史函数，在构造时预先算好。
    """

    def __init__(
        self,
        params: ModelParams,
        history: History,
        config: Optional[ThetaConfig] = None,
        dt: Optional[float] = None,
        pulse_exponent: Optional[int] = None,
        keep_delays: float = 1.0,
        record_every: Optional[int] = None,
    ) -> None:
        cfg = config or ThetaConfig.default()
        self.params = params
        self.config = cfg
        self.exponent = int(pulse_exponent if pulse_exponent is not None else cfg.smooth.pulse_exponent)
        self.scale = pulse_normalization(self.exponent)
        self.dt, self.steps_per_delay = step_size(params.tau, dt, cfg)
        m = self.steps_per_delay
        self.size = max(int(math.ceil(keep_delays * m)), m) + 1
        self.record_every = cfg.smooth.record_every if record_every is None else int(record_every)
        self.spike_tol = cfg.smooth.spike_time_tol

        h, tau = self.dt, params.tau
        self._hist_grid = [self._pulse(history(-tau + i * h)) for i in range(m + 1)]
        self._hist_mid = [self._pulse(history(-tau + (i + 0.5) * h)) for i in range(m)]

        theta0 = float(history(0.0))
        if not math.isfinite(theta0):
            raise ParameterError(f"history(0) must be finite, got {theta0}")
        self._theta = [0.0] * self.size
        self._deriv = [0.0] * self.size
        self._pulse_buf = [0.0] * self.size
        self._theta[0] = theta0
        self._pulse_buf[0] = self._pulse(theta0)
        self._deriv[0] = self._rhs(theta0, self._hist_grid[0])
        self.step_index = 0

        self.spike_times: list = []
        self.downward_crossings: list = []
        self._sample_t: list = [0.0]
        self._sample_theta: list = [theta0]

    # ---------- state ----------

    @property
    def t(self) -> float:
        return self.step_index * self.dt

    @property
    def theta(self) -> float:
        return self._theta[self.step_index % self.size]

    def samples(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self._sample_t), np.asarray(self._sample_theta)

    def copy(self) -> "DdeIntegrator":
        other = copy.copy(self)
        other._theta = list(self._theta)
        other._deriv = list(self._deriv)
        other._pulse_buf = list(self._pulse_buf)
        other.spike_times = list(self.spike_times)
        other.downward_crossings = list(self.downward_crossings)
        other._sample_t = list(self._sample_t)
        other._sample_theta = list(self._sample_theta)
        return other

    # ---------- perturbation (Lyapunov) ----------

    def perturb(self, delta: float) -> None:
        """只扰动当前状态；历史段保持不变。"""
        k = self.step_index
        i = k % self.size
        theta = self._theta[i] + delta
        self._theta[i] = theta
        self._pulse_buf[i] = self._pulse(theta)
        self._deriv[i] = self._rhs(theta, self._delayed_pulse(k))

    def separation(self, other: "DdeIntegrator") -> float:
        """整个缓冲区上的 sup 范数距离（两者必须同步推进）。"""
        if other.step_index != self.step_index or other.size != self.size:
            raise ParameterError("trajectories are not aligned")
        diff = np.asarray(self._theta) - np.asarray(other._theta)
        return float(np.max(np.abs(diff)))

    def rescale_towards(self, reference: "DdeIntegrator", factor: float) -> None:
        """x <- ref + factor (x - ref)，对 theta、导数、脉冲缓冲区同时线性缩放。"""
        for mine, ref in (
            (self._theta, reference._theta),
            (self._deriv, reference._deriv),
            (self._pulse_buf, reference._pulse_buf),
        ):
            a = np.asarray(ref)
            mine[:] = (a + factor * (np.asarray(mine) - a)).tolist()

    # ---------- continuation ----------

    def tail_history(self) -> History:
        """
        用缓冲区里最近的一段构造下一次积分的历史函数（当前时刻映射为 0）。
        整体平移 2pi 的整数倍，让末值落在 [-pi, pi)。
        """
        k = self.step_index
        count = min(self.size, k + 1)
        if count < 2:
            raise DomainError("not enough integrated history for a tail")
        idx = [(k - count + 1 + j) % self.size for j in range(count)]
        y = np.array([self._theta[i] for i in idx])
        dy = np.array([self._deriv[i] for i in idx])
        shift = TWO_PI * math.floor((y[-1] + math.pi) / TWO_PI)
        x = (np.arange(count) - (count - 1)) * self.dt
        spline = CubicHermiteSpline(x, y - shift, dy, extrapolate=False)
        span = float(-x[0])

        def history(t: float) -> float:
            if t < -span - 1e-12 or t > 1e-12:
                raise DomainError(f"tail history covers [-{span}, 0], asked for t={t}")
            return float(spline(min(max(t, -span), 0.0)))

        return history

    # ---------- integration ----------

    def advance_to(self, t_end: float) -> None:
        steps = int(round(t_end / self.dt)) - self.step_index
        self.advance(steps)

    def advance(self, steps: int) -> None:
        if steps <= 0:
            return
        current, kappa = self.params.current, self.params.kappa
        scale, e = self.scale, self.exponent
        cos = math.cos
        theta, deriv, pulse = self._theta, self._deriv, self._pulse_buf
        hist_grid, hist_mid = self._hist_grid, self._hist_mid
        size, m, h = self.size, self.steps_per_delay, self.dt
        half, sixth, eighth = 0.5 * h, h / 6.0, 0.125 * h
        record = self.record_every

        k = self.step_index
        stop = k + steps
        while k < stop:
            i = k % size
            th = theta[i]
            f0 = deriv[i]
            if k < m:
                p_mid = hist_mid[k]
            else:
                j0 = (k - m) % size
                j1 = (j0 + 1) % size
                y_mid = 0.5 * (theta[j0] + theta[j1]) + eighth * (deriv[j0] - deriv[j1])
                p_mid = scale * (1.0 - cos(y_mid)) ** e
            p_next = hist_grid[k + 1] if k + 1 <= m else pulse[(k + 1 - m) % size]
            drive_mid = current + kappa * p_mid
            drive_next = current + kappa * p_next

            c = cos(th + half * f0)
            k2 = 1.0 - c + (1.0 + c) * drive_mid
            c = cos(th + half * k2)
            k3 = 1.0 - c + (1.0 + c) * drive_mid
            c = cos(th + h * k3)
            k4 = 1.0 - c + (1.0 + c) * drive_next
            th1 = th + sixth * (f0 + 2.0 * k2 + 2.0 * k3 + k4)
            if not -1e300 < th1 < 1e300:
                raise NumericalFailure(f"integration diverged at t={k * h}")
            c = cos(th1)
            f1 = 1.0 - c + (1.0 + c) * drive_next

            j = (k + 1) % size
            theta[j] = th1
            deriv[j] = f1
            pulse[j] = scale * (1.0 - c) ** e

            before = crossing_index(th)
            after = crossing_index(th1)
            if before != after:
                self._record_crossings(k * h, th, th1, f0, f1, before, after)

            k += 1
            if record and k % record == 0:
                self._sample_t.append(k * h)
                self._sample_theta.append(th1)
        self.step_index = k

    def _record_crossings(self, t0, th, th1, f0, f1, before, after) -> None:
        h = self.dt
        if after > before:
            for q in range(before + 1, after + 1):
                level = (2 * q + 1) * math.pi
                self.spike_times.append(t0 + locate_crossing(th, th1, f0, f1, h, level, self.spike_tol))
        else:
            for q in range(before, after, -1):
                level = (2 * q + 1) * math.pi
                t = t0 + locate_crossing(th, th1, f0, f1, h, level, self.spike_tol)
                self.downward_crossings.append(t)
                logger.warning(f"downward phase crossing at t={t:.6f}; spike train is spurious")

    def _delayed_pulse(self, k: int) -> float:
        m = self.steps_per_delay
        return self._hist_grid[k] if k <= m else self._pulse_buf[(k - m) % self.size]

    def _pulse(self, theta: float) -> float:
        return self.scale * (1.0 - math.cos(theta)) ** self.exponent

    def _rhs(self, theta: float, delayed_pulse: float) -> float:
        c = math.cos(theta)
        return 1.0 - c + (1.0 + c) * (self.params.current + self.params.kappa * delayed_pulse)


def integrate(
    params: ModelParams,
    history: History,
    t_end: float,
    config: Optional[ThetaConfig] = None,
    dt: Optional[float] = None,
    pulse_exponent: Optional[int] = None,
    transient: Optional[float] = None,
    keep_delays: float = 1.0,
) -> DdeRun:
    """
    从 t = 0 积分到 t_end，并对 transient 之后的脉冲序列做周期/吸引子分析
    （不含 Lyapunov 指数；混沌判定需要 lyapunov_exponent）。
    """
    cfg = config or ThetaConfig.default()
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise ParameterError(f"t_end must be positive, got {t_end}")
    if transient is None:
        transient = min(cfg.smooth.transient_delays * params.tau, 0.5 * t_end)

    integrator = DdeIntegrator(params, history, cfg, dt, pulse_exponent, keep_delays)
    logger.debug(
        f"integrating DDE I={params.current} kappa={params.kappa} tau={params.tau} "
        f"dt={integrator.dt:.3e} to t={t_end}"
    )
    integrator.advance_to(t_end)
    return _finish(integrator, transient, cfg)


def _finish(integrator: DdeIntegrator, transient: float, cfg: ThetaConfig) -> DdeRun:
    times, thetas = integrator.samples()
    run = DdeRun(
        params=integrator.params,
        dt=integrator.dt,
        pulse_exponent=integrator.exponent,
        t_end=integrator.t,
        transient=transient,
        spike_times=list(integrator.spike_times),
        downward_crossings=list(integrator.downward_crossings),
        sample_times=times,
        sample_thetas=thetas,
    )
    run.state = integrator
    return summarize_run(run, cfg)
