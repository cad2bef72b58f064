# types.py
# =========================
# 事件仿真数据结构（Event simulation types）
# =========================

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from ..errors import ParameterError
from ..neuron.flows import voltage_to_theta, wrap_phase
from ..neuron.types import ModelParams, Phase


class RegimeTag(str, Enum):
    """一段闭式流所处的区间。"""
    RESET = "reset"            # 刚放电，v = -inf
    BELOW = "below"            # v < -Im，回落到 theta_-
    BETWEEN = "between"        # -Im < v < Im，tanh 解
    ABOVE = "above"            # v > Im，coth 解，有限时间放电
    REST = "rest"              # v = -Im
    STALLED = "stalled"        # v = Im，停在鞍点
    OSCILLATING = "oscillating"  # I > 0，tan 解


class TrajectoryStatus(str, Enum):
    ACTIVE = "active"
    RESTING = "resting"
    STALLED = "stalled"


class BasinKind(str, Enum):
    RECOVERED = "recovered"
    SWITCHED = "switched"
    DIED = "died"
    UNSETTLED = "unsettled"    # 续跑到上限 ISI 仍未收敛


@dataclass(frozen=True)
class BasinOutcome:
    kind: BasinKind
    n: Optional[int] = None


@dataclass(frozen=True)
class SettledRun:
    """续跑到 ISI 收敛后的轨迹；未收敛时 period 与 n 为 None，reason 说明原因。"""
    trajectory: "EventTrajectory"
    period: Optional[float] = None
    n: Optional[int] = None
    reason: str = ""

    @property
    def periodic(self) -> bool:
        return self.period is not None


@dataclass(frozen=True)
class InitialHistory:
    """
    (-tau, 0] 内的过去放电时间与 t = 0 的相位。
    theta0 = pi 视为 t = 0 刚放电。
    """
    seed_firings: tuple
    theta0: Phase

    def __post_init__(self) -> None:
        seeds = tuple(float(t) for t in self.seed_firings)
        if any(b <= a for a, b in zip(seeds, seeds[1:])):
            raise ParameterError("seed firings must be strictly increasing")
        object.__setattr__(self, "seed_firings", seeds)

    def validate(self, tau: float) -> None:
        for t in self.seed_firings:
            if not -tau < t <= 0.0:
                raise ParameterError(f"seed firing {t} is outside (-tau, 0] with tau={tau}")


@dataclass(frozen=True)
class Segment:
    """
    一段解析流：从 t_start 的电压 voltage_start 出发，到 t_end 前没有事件。
    """
    t_start: float
    t_end: float
    tag: RegimeTag
    voltage_start: float

    @property
    def theta_start(self) -> Phase:
        if self.voltage_start == -math.inf:
            return math.pi
        return wrap_phase(voltage_to_theta(self.voltage_start))


@dataclass
class EventTrajectory:
    """
    firing_times 含种子放电；kick_times 恰为 {t_f + tau <= t_end_sim}。
    pending_kicks 与 (t_state, v_state) 是续算所需的全部状态。
    """
    params: ModelParams
    history: InitialHistory
    firing_times: List[float] = field(default_factory=list)
    kick_times: List[float] = field(default_factory=list)
    segments: List[Segment] = field(default_factory=list)
    t_end_sim: float = 0.0
    status: TrajectoryStatus = TrajectoryStatus.ACTIVE
    pending_kicks: List[float] = field(default_factory=list)
    t_state: float = 0.0
    v_state: float = 0.0
    events_processed: int = 0

    @property
    def simulated_firings(self) -> List[float]:
        """t > 0 的放电。"""
        return [t for t in self.firing_times if t > 0.0]
