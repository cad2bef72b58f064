"""双曲/反三角辅助函数（标量与 numpy 数组通用）。"""

from __future__ import annotations

import numpy as np


def coth(x):
    with np.errstate(divide="ignore"):
        return 1.0 / np.tanh(x)


def acoth(x):
    """acoth(x) = atanh(1/x)，|x| > 1；acoth(+-inf) = 0。"""
    with np.errstate(divide="ignore"):
        return np.arctanh(1.0 / np.asarray(x, dtype=float))


def csch2(x):
    """csch^2(x) = coth^2(x) - 1"""
    with np.errstate(divide="ignore"):
        return 1.0 / np.sinh(x) ** 2


def acot(x):
    """取值在 (0, pi) 的反余切：acot(x) = pi/2 - atan(x)。"""
    return np.arctan2(1.0, x)


def acot_of_cot_shift(kappa, s):
    """
    acot(kappa - cot s)，s in [0, pi] 上无奇点的写法：
    atan2(sin s, kappa sin s - cos s)。
    """
    sin_s = np.sin(s)
    return np.arctan2(sin_s, kappa * sin_s - np.cos(s))
