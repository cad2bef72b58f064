# simulator.py
# =========================
# 精确事件驱动仿真（Exact event-driven simulation）
# 两次事件之间按闭式解推进；事件 = 放电 或 延迟脉冲到达
# =========================

from __future__ import annotations

import heapq
import math
from bisect import bisect_right
from dataclasses import replace
from typing import Optional

from loguru import logger

from ..config import ThetaConfig
from ..errors import NumericalFailure, ParameterError
from ..neuron.flows import evolve_voltage, theta_to_voltage, wrap_phase
from ..neuron.types import ModelParams, Phase
from .types import EventTrajectory, InitialHistory, RegimeTag, Segment, TrajectoryStatus


def simulate(
    params: ModelParams,
    history: InitialHistory,
    t_end: float,
    config: Optional[ThetaConfig] = None,
) -> EventTrajectory:
    """
    从 t = 0 仿真到 t_end。种子放电计入 firing_times，其脉冲在 t_f + tau 到达。
    """
    if not t_end > 0:
        raise ParameterError(f"t_end must be positive, got {t_end}")
    history.validate(params.tau)

    theta0 = wrap_phase(history.theta0)
    traj = EventTrajectory(params=params, history=history)
    traj.firing_times = list(history.seed_firings)
    traj.pending_kicks = [t + params.tau for t in history.seed_firings]
    heapq.heapify(traj.pending_kicks)
    traj.t_state = 0.0
    traj.v_state = -math.inf if theta0 == math.pi else theta_to_voltage(theta0)
    return _advance(traj, t_end, config or ThetaConfig.default())


def resume(
    trajectory: EventTrajectory,
    t_end: float,
    config: Optional[ThetaConfig] = None,
) -> EventTrajectory:
    """
    从已存状态继续仿真；检查点处不重新计算状态，后续事件与一次跑完逐位一致。
    """
    if t_end < trajectory.t_end_sim:
        raise ParameterError(f"cannot resume backwards: {t_end} < {trajectory.t_end_sim}")
    traj = replace(
        trajectory,
        firing_times=list(trajectory.firing_times),
        kick_times=list(trajectory.kick_times),
        segments=list(trajectory.segments[:-1]),
        pending_kicks=list(trajectory.pending_kicks),
    )
    return _advance(traj, t_end, config or ThetaConfig.default())


def voltage_at(trajectory: EventTrajectory, t: float) -> float:
    """trajectory 上 t 时刻的 QIF 电压（放电瞬间为 +-inf）。"""
    segment = _segment_at(trajectory, t)
    return _voltage_after(segment.voltage_start, t - segment.t_start, trajectory.params.current)


def theta_at(trajectory: EventTrajectory, t: float) -> Phase:
    v = voltage_at(trajectory, t)
    if math.isinf(v):
        return math.pi
    return wrap_phase(2.0 * math.atan(v))


def _segment_at(trajectory: EventTrajectory, t: float) -> Segment:
    if not trajectory.segments or not 0.0 <= t <= trajectory.t_end_sim:
        raise ParameterError(f"t={t} is outside the simulated range [0, {trajectory.t_end_sim}]")
    starts = [s.t_start for s in trajectory.segments]
    return trajectory.segments[max(bisect_right(starts, t) - 1, 0)]


def _advance(traj: EventTrajectory, t_end: float, cfg: ThetaConfig) -> EventTrajectory:
    params = traj.params
    current, kappa, tau = params.current, params.kappa, params.tau
    a = params.magnitude
    excitable = current < 0
    stall_tol = cfg.events.stall_tol * a
    heap = traj.pending_kicks
    t_seg, v_seg = traj.t_state, traj.v_state
    status = TrajectoryStatus.ACTIVE

    while True:
        t_fire = t_seg + _time_to_fire(v_seg, current, a)
        t_kick = heap[0] if heap else math.inf
        if math.isinf(t_fire) and math.isinf(t_kick):
            status = TrajectoryStatus.STALLED if v_seg == a else TrajectoryStatus.RESTING
            logger.debug(f"no further events after t={t_seg}: {status.value}")
            break
        t_next = min(t_fire, t_kick)
        if t_next > t_end:
            break

        traj.events_processed += 1
        if traj.events_processed > cfg.events.max_events:
            raise NumericalFailure(f"event budget {cfg.events.max_events} exhausted at t={t_next}")
        traj.segments.append(Segment(t_seg, t_next, _tag(v_seg, current, a), v_seg))

        # 同时刻先放电再踢：v = -inf 时 kick 无效
        if t_fire <= t_kick:
            traj.firing_times.append(t_fire)
            heapq.heappush(heap, t_fire + tau)
            t_seg, v_seg = t_fire, -math.inf
            continue

        heapq.heappop(heap)
        merged = 1
        while heap and heap[0] == t_kick:
            heapq.heappop(heap)
            merged += 1
        traj.kick_times.extend([t_kick] * merged)
        v_new = _voltage_after(v_seg, t_kick - t_seg, current) + merged * kappa
        if excitable and abs(v_new - a) <= stall_tol:
            logger.debug(f"kick at t={t_kick} lands on the saddle (v={v_new}); stalled")
            v_new = a
        t_seg, v_seg = t_kick, v_new

    traj.segments.append(Segment(t_seg, t_end, _tag(v_seg, current, a), v_seg))
    traj.t_end_sim = t_end
    traj.t_state, traj.v_state = t_seg, v_seg
    traj.status = status
    return traj


def _voltage_after(v0: float, dt: float, current: float) -> float:
    if dt == 0.0:
        return v0
    return evolve_voltage(v0, dt, current)


def _time_to_fire(v: float, current: float, a: float) -> float:
    if current > 0:
        return (math.pi / 2.0 - math.atan(v / a)) / a
    if v > a:
        return math.atanh(a / v) / a
    return math.inf


def _tag(v: float, current: float, a: float) -> RegimeTag:
    if v == -math.inf:
        return RegimeTag.RESET
    if current > 0:
        return RegimeTag.OSCILLATING
    if v == a:
        return RegimeTag.STALLED
    if v == -a:
        return RegimeTag.REST
    if v > a:
        return RegimeTag.ABOVE
    if v < -a:
        return RegimeTag.BELOW
    return RegimeTag.BETWEEN
