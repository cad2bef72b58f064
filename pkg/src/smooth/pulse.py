"""脉冲函数 P_m(theta) = c_m (1 - cos theta)^m，c_m 使 [0, 2pi] 上积分为 2pi。"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError


def pulse_normalization(exponent: int = 5) -> float:
    """c_m = 2^m / C(2m, m)；m = 5 时为 8/63。"""
    if exponent < 1:
        raise ParameterError(f"pulse exponent must be >= 1, got {exponent}")
    return 2.0 ** exponent / math.comb(2 * exponent, exponent)


def pulse_function(theta, exponent: int = 5):
    """标量返回 float，数组逐元素计算。"""
    scale = pulse_normalization(exponent)
    if np.ndim(theta) == 0:
        return scale * (1.0 - math.cos(float(theta))) ** exponent
    return scale * (1.0 - np.cos(theta)) ** exponent


def equivalent_delta_kick(kappa: float) -> float:
    """
    窄脉冲极限：延迟相位以 d theta/dt = 2 扫过 pi，电压跳变 kappa * 2pi / 2 = pi kappa。
    """
    return math.pi * kappa
