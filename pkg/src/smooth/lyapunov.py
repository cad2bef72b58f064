# lyapunov.py
# =========================
# 最大 Lyapunov 指数（Largest Lyapunov exponent）
# 参考轨迹 + 扰动轨迹同步积分，每隔 renorm_interval 按缓冲区 sup 范数重归一化
# =========================

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..config import ThetaConfig
from ..errors import ParameterError
from ..neuron.types import ModelParams
from .integrator import DdeIntegrator, History
from .types import LyapunovEstimate


def bootstrap_interval(
    rates: Sequence[float],
    samples: int = 1000,
    confidence: float = 0.95,
    seed: int = 0,
) -> Tuple[float, float]:
    """窗口增长率均值的百分位 bootstrap 区间；固定种子保证可复现。"""
    values = np.asarray(rates, dtype=float)
    if values.size == 0:
        raise ParameterError("no growth rates to resample")
    rng = np.random.default_rng(seed)
    means = values[rng.integers(0, values.size, size=(samples, values.size))].mean(axis=1)
    alpha = 0.5 * (1.0 - confidence)
    low, high = np.quantile(means, [alpha, 1.0 - alpha])
    return float(low), float(high)


def lyapunov_exponent(
    params: ModelParams,
    history: History,
    t_end: float,
    renorm_interval: Optional[float] = None,
    config: Optional[ThetaConfig] = None,
    transient: Optional[float] = None,
    dt: Optional[float] = None,
    pulse_exponent: Optional[int] = None,
) -> LyapunovEstimate:
    """
    过渡期后扰动当前状态 d0，测量到 t_end。
    没有放电的测量窗口记为 rest（静息态的指数即线性衰减率）。
    """
    cfg = config or ThetaConfig.default()
    lc = cfg.lyapunov
    interval = renorm_interval if renorm_interval is not None else lc.renorm_interval
    if not interval > 0.0:
        raise ParameterError(f"renormalisation interval must be positive, got {interval}")
    if transient is None:
        transient = cfg.smooth.transient_delays * params.tau
    if t_end <= transient:
        raise ParameterError(f"t_end={t_end} leaves no measurement window after transient={transient}")

    reference = DdeIntegrator(params, history, cfg, dt, pulse_exponent, record_every=0)
    reference.advance_to(transient)
    perturbed = reference.copy()
    perturbed.perturb(lc.d0)

    steps = max(1, int(round(interval / reference.dt)))
    window = steps * reference.dt
    spikes_before = len(reference.spike_times)
    rates = []
    while reference.t + window <= t_end + 1e-12:
        reference.advance(steps)
        perturbed.advance(steps)
        distance = max(perturbed.separation(reference), 1e-300)
        rates.append(math.log(distance / lc.d0) / window)
        perturbed.rescale_towards(reference, lc.d0 / distance)
    if not rates:
        raise ParameterError(f"measurement window shorter than one renormalisation interval ({window})")

    rest = len(reference.spike_times) == spikes_before
    low, high = bootstrap_interval(rates, lc.bootstrap_samples, lc.confidence, lc.seed)
    estimate = LyapunovEstimate(
        exponent=float(np.mean(rates)),
        ci_low=low,
        ci_high=high,
        window_rates=tuple(rates),
        rest=rest,
    )
    logger.info(
        f"lyapunov tau={params.tau} kappa={params.kappa}: {estimate.exponent:.4f} "
        f"[{low:.4f}, {high:.4f}] over {len(rates)} windows"
    )
    return estimate
