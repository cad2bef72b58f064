# types.py
# =========================
# 分支数据结构（Branch types）
# =========================

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

from ..stability.types import Stability


class FoldSign(str, Enum):
    """正电流下每支两条鞍结点曲线：Plus 周期较长，Minus 较短（kappa > 0）。"""
    PLUS = "plus"
    MINUS = "minus"


class Coupling(str, Enum):
    EXCITATORY = "excitatory"
    INHIBITORY = "inhibitory"


class LocusKind(str, Enum):
    SADDLE_NODE = "saddle_node"
    HOMOCLINIC = "homoclinic"


@dataclass(frozen=True)
class BranchPoint:
    """
    第 n 支上的一个周期解：每个延迟区间内共 n+1 次放电。
    period 即周期 T；kappa 记录所在的反馈强度（旋转对称会改变它的符号）。
    """
    n: int
    tau: float
    period: float
    gamma: float
    stability: Stability
    kappa: float

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "tau": self.tau,
            "T": self.period,
            "gamma": self.gamma,
            "stability": self.stability.value,
        }


@dataclass
class SaddleNodeLocus:
    """
    (tau, kappa) 平面上的一条分岔曲线。
    samples: (kappa, tau, T)；同宿曲线的 T 记为 inf。
    """
    n: int
    kind: LocusKind = LocusKind.SADDLE_NODE
    sign: FoldSign | None = None
    samples: List[Tuple[float, float, float]] = field(default_factory=list)


@dataclass(frozen=True)
class CuspPoint:
    n: int
    tau: float
    kappa: float

    @property
    def coupling(self) -> Coupling:
        return Coupling.EXCITATORY if self.kappa > 0 else Coupling.INHIBITORY
