# attractor.py
# =========================
# 吸引子分类（Attractor classification）
# 由过渡期之后的 ISI 序列找最短重复模式；无模式时看最大 Lyapunov 指数
# =========================

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from loguru import logger

from ..config import ThetaConfig
from ..events.analysis import spikes_per_delay
from .spikes import interspike_intervals
from .types import AttractorClass, DdeRun


def pattern_length(
    intervals: Sequence[float],
    rel_tol: float = 1e-3,
    max_pattern: int = 16,
) -> Optional[int]:
    """最短的 p，使 ISI[i + p] 与 ISI[i] 在相对容差内处处相等；找不到返回 None。"""
    isi = np.asarray(intervals, dtype=float)
    if isi.size == 0:
        return None
    tol = rel_tol * float(np.mean(isi))
    for p in range(1, max_pattern + 1):
        if isi.size < 2 * p:
            break
        if np.all(np.abs(isi[p:] - isi[:-p]) <= tol):
            return p
    return None


def classify_attractor(run: DdeRun, config: Optional[ThetaConfig] = None) -> AttractorClass:
    cfg = config or ThetaConfig.default()
    spikes = run.settled_spikes
    if not spikes:
        return AttractorClass.REST
    if run.spurious:
        logger.warning("spurious downward crossings present; attractor left unclassified")
        return AttractorClass.AMBIGUOUS
    if len(spikes) < cfg.smooth.min_spikes:
        return AttractorClass.AMBIGUOUS

    p = run.pattern_length
    if p is not None:
        return AttractorClass.PERIOD_DOUBLED if p % 2 == 0 else AttractorClass.PERIODIC

    lyap = run.lyapunov
    threshold = cfg.lyapunov.threshold
    if lyap is not None and lyap.exponent > threshold and lyap.ci_low > threshold:
        return AttractorClass.CHAOTIC
    return AttractorClass.AMBIGUOUS


def summarize_run(run: DdeRun, config: Optional[ThetaConfig] = None) -> DdeRun:
    """填入 pattern_length、measured_period、spikes_per_delay 和 attractor_class。"""
    cfg = config or ThetaConfig.default()
    spikes = run.settled_spikes
    if len(spikes) >= 3:
        isi = interspike_intervals(spikes)
        p = pattern_length(isi, cfg.smooth.isi_cluster_tol, cfg.smooth.max_pattern)
        run.pattern_length = p
        if p is not None:
            cycles = len(isi) // p
            run.measured_period = (spikes[-1] - spikes[-1 - cycles * p]) / cycles
        run.spikes_per_delay = spikes_per_delay(spikes, run.params.tau)
    run.attractor_class = classify_attractor(run, cfg)
    logger.debug(
        f"run tau={run.params.tau}: {len(spikes)} settled spikes, pattern={run.pattern_length}, "
        f"class={run.attractor_class.value}"
    )
    return run
