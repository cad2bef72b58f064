from .types import AttractorClass, BranchTrace, ContinuationPoint, DdeRun, LyapunovEstimate
from .pulse import equivalent_delta_kick, pulse_function, pulse_normalization
from .integrator import (
    DdeIntegrator,
    constant_history,
    integrate,
    rest_phase,
    seeded_history,
    step_size,
)
from .attractor import classify_attractor, pattern_length, summarize_run
from .lyapunov import bootstrap_interval, lyapunov_exponent
from .analysis import default_horizon, simulate_smooth
from .continuation import tau_schedule, trace_stable_branch
from .export import run_summary, write_branch_trace, write_run_csv, write_run_summary

__all__ = [
    "AttractorClass",
    "BranchTrace",
    "ContinuationPoint",
    "DdeRun",
    "LyapunovEstimate",
    "equivalent_delta_kick",
    "pulse_function",
    "pulse_normalization",
    "DdeIntegrator",
    "constant_history",
    "integrate",
    "rest_phase",
    "seeded_history",
    "step_size",
    "classify_attractor",
    "pattern_length",
    "summarize_run",
    "bootstrap_interval",
    "lyapunov_exponent",
    "default_horizon",
    "simulate_smooth",
    "tau_schedule",
    "trace_stable_branch",
    "run_summary",
    "write_branch_trace",
    "write_run_csv",
    "write_run_summary",
]
