# types.py
# =========================
# 模型参数（Model parameters）
# ModelParams = (I, kappa, tau): one full parameter point of the delayed theta neuron
# =========================

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from enum import Enum

from ..errors import DomainError, ParameterError


# 角度状态，约定取 (-pi, pi] 的代表元
Phase = float
# QIF 电压 v = tan(theta/2)，theta = pi 时为 +-inf
VoltageEquivalent = float


class Regime(str, Enum):
    """
    输入电流区间
    Current regime: excitable (I < 0) or intrinsically oscillating (I > 0)
    """
    NEGATIVE = "neg"
    POSITIVE = "pos"


@dataclass(frozen=True)
class ModelParams:
    """
    一个参数点：输入电流 I、反馈强度 kappa、延迟 tau
    A parameter point; I = 0 (the SNIC point) is rejected.
    """
    current: float
    kappa: float
    tau: float

    def __post_init__(self) -> None:
        for name in ("current", "kappa", "tau"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value}")
        if self.tau <= 0:
            raise ParameterError(f"tau must be positive, got {self.tau}")
        if self.current == 0:
            raise ParameterError("I = 0 is the SNIC point; no finite-period theory applies")

    @property
    def regime(self) -> Regime:
        return Regime.NEGATIVE if self.current < 0 else Regime.POSITIVE

    @property
    def magnitude(self) -> float:
        """sqrt(|I|)，即 I_m 或 I_p。"""
        return math.sqrt(abs(self.current))

    @property
    def i_m(self) -> float:
        if self.regime is not Regime.NEGATIVE:
            raise DomainError("I_m is only defined for negative current")
        return self.magnitude

    @property
    def i_p(self) -> float:
        if self.regime is not Regime.POSITIVE:
            raise DomainError("I_p is only defined for positive current")
        return self.magnitude

    def normalized(self) -> "ModelParams":
        """
        把 |I| 缩放到 1：t' = a t, kappa' = kappa / a, tau' = a tau (a = sqrt|I|)。
        周期按 T = T' / a 还原。
        """
        a = self.magnitude
        return ModelParams(
            current=-1.0 if self.current < 0 else 1.0,
            kappa=self.kappa / a,
            tau=self.tau * a,
        )


def check_branch_index(n: int, minimum: int = 0) -> None:
    """n 为分支序号（每个延迟区间内额外放电数）。"""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < minimum:
        raise ParameterError(f"n must be an integer >= {minimum}, got {n!r}")
