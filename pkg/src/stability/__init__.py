# stability/__init__.py
# =========================
# 周期解稳定性（Stability of periodic solutions）
# =========================

from __future__ import annotations

from .types import Stability, StabilitySpectrum
from .floquet import (
    classify,
    companion_jacobian,
    exit_gamma,
    exit_speed,
    fold_gamma,
    g_roots,
    max_nontrivial_modulus,
    perturbation_growth,
    spectrum,
)
from .firing_map import (
    firing_map_jacobian,
    gamma_at_lag_negative,
    gamma_at_lag_positive,
    gamma_for,
    gamma_negative,
    gamma_positive,
    next_firing,
    next_firing_negative,
    next_firing_positive,
    numerical_jacobian_row,
    periodic_residual,
    periodic_residual_negative,
    periodic_residual_positive,
)

__all__ = [
    "Stability",
    "StabilitySpectrum",
    "classify",
    "companion_jacobian",
    "exit_gamma",
    "exit_speed",
    "fold_gamma",
    "g_roots",
    "max_nontrivial_modulus",
    "perturbation_growth",
    "spectrum",
    "firing_map_jacobian",
    "gamma_at_lag_negative",
    "gamma_at_lag_positive",
    "gamma_for",
    "gamma_negative",
    "gamma_positive",
    "next_firing",
    "next_firing_negative",
    "next_firing_positive",
    "numerical_jacobian_row",
    "periodic_residual",
    "periodic_residual_negative",
    "periodic_residual_positive",
]
