# spikes.py
# =========================
# 脉冲定位（Spike location）
# 提升角 theta 向上穿过 (2k+1) pi 即一次放电；在步内三次 Hermite 插值上二分定位
# =========================

from __future__ import annotations

import math
from typing import List, Sequence


TWO_PI = 2.0 * math.pi


def crossing_index(theta: float) -> int:
    """theta 已越过的 (2k+1) pi 中最大的 k；theta 恰在 pi 时为 0。"""
    return math.floor((theta - math.pi) / TWO_PI)


def hermite_value(y0: float, y1: float, f0: float, f1: float, h: float, x: float) -> float:
    s = x / h
    s2 = s * s
    s3 = s2 * s
    return (
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * h * f0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * h * f1
    )


def hermite_midpoint(y0: float, y1: float, f0: float, f1: float, h: float) -> float:
    return 0.5 * (y0 + y1) + 0.125 * h * (f0 - f1)


def locate_crossing(
    y0: float,
    y1: float,
    f0: float,
    f1: float,
    h: float,
    level: float,
    tol: float = 1e-10,
) -> float:
    """
    返回步内偏移 x in [0, h]，使插值穿过 level。
    y0 与 y1 必须位于 level 两侧（或 y1 恰好等于 level）。
    """
    upward = y1 >= y0
    lo, hi = 0.0, h
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        above = hermite_value(y0, y1, f0, f1, h, mid) >= level
        if above == upward:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def interspike_intervals(spike_times: Sequence[float]) -> List[float]:
    return [b - a for a, b in zip(spike_times, spike_times[1:])]
