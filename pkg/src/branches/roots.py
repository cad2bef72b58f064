# roots.py
# =========================
# 存在方程求根（Root scan）
# 网格扫描找变号区间 -> brentq 二分 -> Newton 修正
# =========================

from __future__ import annotations

from typing import Callable, List, Optional

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from ..config import RootScanConfig


def scan_roots(
    residual: Callable,
    lo: float,
    hi: float,
    config: Optional[RootScanConfig] = None,
    derivative: Optional[Callable] = None,
) -> List[float]:
    """
    在 [lo, hi] 上找 residual 的全部（可分辨的）根，按升序返回。
    residual 必须接受 numpy 数组；derivative 给出时用 Newton 做最后修正。
    """
    cfg = config or RootScanConfig()
    if not hi > lo:
        return []

    grid = np.linspace(lo, hi, max(cfg.grid_points, 2))
    with np.errstate(all="ignore"):
        values = np.asarray(residual(grid), dtype=float)

    finite = np.isfinite(values)
    exact = np.nonzero(finite & (values == 0.0))[0]
    both = finite[:-1] & finite[1:]
    with np.errstate(invalid="ignore"):
        brackets = np.nonzero(both & (values[:-1] * values[1:] < 0.0))[0]

    roots: List[float] = [float(grid[k]) for k in exact]
    for k in brackets:
        root = brentq(lambda x: float(residual(x)), grid[k], grid[k + 1], xtol=cfg.xtol)
        roots.append(_polish(residual, derivative, root, grid[k], grid[k + 1], cfg.newton_steps))
    roots.sort()

    logger.debug(f"root scan on [{lo:.6g}, {hi:.6g}]: {len(roots)} roots")
    return roots


def _polish(
    residual: Callable,
    derivative: Optional[Callable],
    root: float,
    lo: float,
    hi: float,
    steps: int,
) -> float:
    if derivative is None:
        return float(root)
    best = float(root)
    best_abs = abs(float(residual(best)))
    for _ in range(steps):
        slope = float(derivative(best))
        if slope == 0.0 or not np.isfinite(slope):
            break
        candidate = best - float(residual(best)) / slope
        if not lo <= candidate <= hi:
            break
        value = abs(float(residual(candidate)))
        if not value < best_abs:
            break
        best, best_abs = candidate, value
    return best
