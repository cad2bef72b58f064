# continuation.py
# =========================
# 基于仿真的稳定分支延拓（Simulation-based continuation）
# 每个 tau 上从上一个 tau 的末段轨迹出发积分，只能跟踪稳定解
# =========================

from __future__ import annotations

import math
from typing import List, Optional, Tuple

from loguru import logger

from ..config import ThetaConfig
from ..errors import ParameterError
from ..neuron.types import ModelParams
from .integrator import History, integrate
from .types import BranchTrace, ContinuationPoint, DdeRun


def tau_schedule(tau_start: float, tau_stop: float, step: float) -> List[float]:
    """从 tau_start 走到 tau_stop（含端点附近），步长符号自动取向。"""
    if not step > 0.0:
        raise ParameterError(f"tau step must be positive, got {step}")
    direction = 1.0 if tau_stop >= tau_start else -1.0
    count = int(math.floor(abs(tau_stop - tau_start) / step + 1e-9))
    return [tau_start + direction * k * step for k in range(count + 1)]


def trace_stable_branch(
    params: ModelParams,
    tau_stop: float,
    history: History,
    config: Optional[ThetaConfig] = None,
    tau_step: Optional[float] = None,
    dt: Optional[float] = None,
    pulse_exponent: Optional[int] = None,
) -> BranchTrace:
    """
    params.tau 为起点。某个 tau 上吸引子丢失（非单脉冲周期、分支序号变化或周期跳变）时
    记入 ends，并用最后一次成功的末段继续尝试；连续 max_gaps 次失败后停止。
    """
    cfg = config or ThetaConfig.default()
    cc = cfg.continuation
    step = tau_step if tau_step is not None else cc.tau_step
    trace = BranchTrace()
    previous: Optional[ContinuationPoint] = None
    current_history = history
    gaps = 0

    for tau in tau_schedule(params.tau, tau_stop, step):
        p = ModelParams(params.current, params.kappa, tau)
        transient = cc.transient_delays * tau
        run = integrate(
            p,
            current_history,
            transient + cc.measure_delays * tau,
            cfg,
            dt,
            pulse_exponent,
            transient,
            keep_delays=cfg.smooth.tail_delays,
        )
        accepted, reason = _accept(run, previous, cc.jump_tol)
        if accepted:
            previous = ContinuationPoint(tau=tau, period=run.measured_period, n=run.spikes_per_delay)
            trace.points.append(previous)
            current_history = run.state.tail_history()
            gaps = 0
            continue

        trace.ends.append((tau, reason))
        logger.info(f"continuation lost the attractor at tau={tau:.4f}: {reason}")
        gaps += 1
        if gaps >= cc.max_gaps:
            break
    return trace


def _accept(run: DdeRun, previous: Optional[ContinuationPoint], jump_tol: float) -> Tuple[bool, str]:
    if run.spurious:
        return False, "spurious"
    if not run.settled_spikes:
        return False, "rest"
    if run.pattern_length != 1 or run.measured_period is None:
        return False, "aperiodic" if run.pattern_length is None else f"pattern_{run.pattern_length}"
    if previous is not None:
        if run.spikes_per_delay != previous.n:
            return False, "branch_switch"
        if abs(run.measured_period - previous.period) > jump_tol * previous.period:
            return False, "period_jump"
    return True, ""
