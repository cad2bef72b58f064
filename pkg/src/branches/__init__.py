# branches/__init__.py
# =========================
# 周期解分支（Branches of periodic solutions）
# excitable: I < 0；oscillatory: I > 0；均按 |I| = 1 归一化
# =========================

from __future__ import annotations

from .types import BranchPoint, Coupling, CuspPoint, FoldSign, LocusKind, SaddleNodeLocus
from .roots import scan_roots
from .excitable import (
    branch_parametric,
    branch_point,
    branch_point_from_lag,
    default_lags,
    gamma_monotonicity_violations,
    homoclinic_locus,
    homoclinic_tau,
    primary_branch_T,
    primary_branch_slope,
    saddle_node_locus,
    saddle_node_point,
    solve_branch,
    superstable_point,
)
from .oscillatory import (
    branch_maximum_pos,
    branch_parametric_pos,
    branch_point_from_lag_pos,
    branch_point_pos,
    cusp_point,
    default_lags_pos,
    fold_curve_rotation,
    primary_branch_T_pos,
    primary_branch_slope_pos,
    rotate_branch,
    saddle_node_locus_pos,
    saddle_node_point_pos,
    solve_branch_pos,
    superstable_point_pos,
    transition_point_pos,
)

__all__ = [
    # Types
    "BranchPoint",
    "Coupling",
    "CuspPoint",
    "FoldSign",
    "LocusKind",
    "SaddleNodeLocus",
    "scan_roots",
    # Excitable
    "branch_parametric",
    "branch_point",
    "branch_point_from_lag",
    "default_lags",
    "gamma_monotonicity_violations",
    "homoclinic_locus",
    "homoclinic_tau",
    "primary_branch_T",
    "primary_branch_slope",
    "saddle_node_locus",
    "saddle_node_point",
    "solve_branch",
    "superstable_point",
    # Oscillatory
    "branch_maximum_pos",
    "branch_parametric_pos",
    "branch_point_from_lag_pos",
    "branch_point_pos",
    "cusp_point",
    "default_lags_pos",
    "fold_curve_rotation",
    "primary_branch_T_pos",
    "primary_branch_slope_pos",
    "rotate_branch",
    "saddle_node_locus_pos",
    "saddle_node_point_pos",
    "solve_branch_pos",
    "superstable_point_pos",
    "transition_point_pos",
]
