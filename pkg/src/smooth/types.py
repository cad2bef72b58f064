# types.py
# =========================
# 光滑反馈模型数据结构（Smooth-feedback run records）
# =========================

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from ..neuron.types import ModelParams


class AttractorClass(str, Enum):
    PERIODIC = "periodic"
    PERIOD_DOUBLED = "period_doubled"
    CHAOTIC = "chaotic"
    REST = "rest"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class LyapunovEstimate:
    """最大 Lyapunov 指数：各重归一化窗口增长率的均值及 bootstrap 置信区间。"""
    exponent: float
    ci_low: float
    ci_high: float
    window_rates: tuple = ()
    rest: bool = False

    @property
    def significantly_positive(self) -> bool:
        return self.ci_low > 0.0


@dataclass
class DdeRun:
    """
    一次积分的结果。spike_times 为提升角向上穿过 (2k+1) pi 的时刻；
    downward_crossings 非空说明出现了伪脉冲。
    """
    params: ModelParams
    dt: float
    pulse_exponent: int
    t_end: float
    transient: float
    spike_times: List[float] = field(default_factory=list)
    downward_crossings: List[float] = field(default_factory=list)
    sample_times: np.ndarray = field(default_factory=lambda: np.empty(0))
    sample_thetas: np.ndarray = field(default_factory=lambda: np.empty(0))
    measured_period: Optional[float] = None
    spikes_per_delay: Optional[int] = None
    pattern_length: Optional[int] = None
    lyapunov: Optional[LyapunovEstimate] = None
    attractor_class: Optional[AttractorClass] = None
    # 积分器末态，供延拓和续算使用
    state: Optional[object] = field(default=None, repr=False, compare=False)

    @property
    def spurious(self) -> bool:
        return bool(self.downward_crossings)

    @property
    def settled_spikes(self) -> List[float]:
        return [t for t in self.spike_times if t > self.transient]


@dataclass(frozen=True)
class ContinuationPoint:
    tau: float
    period: float
    n: int


@dataclass
class BranchTrace:
    """仿真延拓得到的稳定分支；ends 记录吸引子丢失的位置与原因。"""
    points: List[ContinuationPoint] = field(default_factory=list)
    ends: List[tuple] = field(default_factory=list)
