"""光滑反馈模型的一站式仿真：积分、周期测量、必要时估计 Lyapunov 指数并分类。"""

from __future__ import annotations

from typing import Optional

from ..config import ThetaConfig
from ..neuron.types import ModelParams
from .attractor import classify_attractor
from .integrator import History, integrate
from .lyapunov import lyapunov_exponent
from .types import DdeRun


def default_horizon(params: ModelParams, config: Optional[ThetaConfig] = None) -> float:
    cfg = config or ThetaConfig.default()
    return (cfg.smooth.transient_delays + cfg.smooth.measure_delays) * params.tau


def simulate_smooth(
    params: ModelParams,
    history: History,
    t_end: Optional[float] = None,
    config: Optional[ThetaConfig] = None,
    lyapunov: Optional[bool] = None,
    dt: Optional[float] = None,
    pulse_exponent: Optional[int] = None,
) -> DdeRun:
    """
    lyapunov=None 时只在 ISI 没有重复模式（且有放电）时才计算指数；
    True 总是计算，False 从不计算。
    """
    cfg = config or ThetaConfig.default()
    horizon = t_end if t_end is not None else default_horizon(params, cfg)
    transient = min(cfg.smooth.transient_delays * params.tau, 0.5 * horizon)
    run = integrate(params, history, horizon, cfg, dt, pulse_exponent, transient)

    wanted = lyapunov
    if wanted is None:
        wanted = run.pattern_length is None and bool(run.settled_spikes) and not run.spurious
    if wanted:
        run.lyapunov = lyapunov_exponent(
            params, history, horizon, config=cfg, transient=transient, dt=dt, pulse_exponent=pulse_exponent
        )
        run.attractor_class = classify_attractor(run, cfg)
    return run
