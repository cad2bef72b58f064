# types.py
# =========================
# 稳定性数据结构（Stability types）
# =========================

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List


class Stability(str, Enum):
    STABLE = "stable"
    SUPERSTABLE = "superstable"
    UNSTABLE = "unstable"
    SADDLE_NODE = "saddle_node"
    NEUTRAL = "neutral"        # gamma = 0：全部乘子是 n+1 次单位根

    @property
    def is_attracting(self) -> bool:
        return self in (Stability.STABLE, Stability.SUPERSTABLE)


@dataclass(frozen=True)
class StabilitySpectrum:
    """
    g(lambda) = lambda^{n+1} - gamma lambda^n - 1 + gamma 的全部 n+1 个根。
    roots[0] 恒为平凡乘子 1。
    """
    n: int
    gamma: float
    roots: List[complex] = field(default_factory=list)
    classification: Stability = Stability.STABLE

    @property
    def nontrivial(self) -> List[complex]:
        return self.roots[1:]

    @property
    def max_nontrivial_modulus(self) -> float:
        return max((abs(r) for r in self.nontrivial), default=0.0)
