from __future__ import annotations

import math

import numpy as np
import pytest

from src.branches.excitable import (
    branch_parametric,
    branch_point,
    default_lags,
    gamma_monotonicity_violations,
    homoclinic_locus,
    homoclinic_tau,
    primary_branch_slope,
    primary_branch_T,
    saddle_node_locus,
    saddle_node_point,
    solve_branch,
    superstable_point,
)
from src.branches.roots import scan_roots
from src.branches.types import BranchPoint, LocusKind
from src.errors import ConsistencyError, DomainError, NoPulsationError, NoSolutionError
from src.stability.firing_map import gamma_at_lag_negative, periodic_residual_negative
from src.stability.floquet import g_roots
from src.stability.types import Stability


KAPPA = 5.0
T_BAR = 2.0 * math.atanh(1.0 / 2.5)


def test_homoclinic_point():
    assert homoclinic_tau(KAPPA) == pytest.approx(0.25541, abs=1e-4)
    assert homoclinic_tau(KAPPA) == pytest.approx(math.atanh(0.25), abs=1e-15)
    with pytest.raises(NoPulsationError):
        homoclinic_tau(2.0)


def test_primary_branch_below_homoclinic_has_no_solution():
    with pytest.raises(NoSolutionError):
        primary_branch_T(0.2, KAPPA)
    assert solve_branch(0, 0.2, KAPPA) == []
    # 接近同宿点时周期发散
    assert primary_branch_T(homoclinic_tau(KAPPA) + 1e-9, KAPPA) > 5.0


def test_primary_branch_superstable_minimum():
    tau_min, period_min = superstable_point(0, KAPPA)
    assert (tau_min, period_min) == pytest.approx((0.42365, 0.8473), abs=1e-4)
    assert primary_branch_T(tau_min, KAPPA) == pytest.approx(period_min, abs=1e-12)
    assert primary_branch_slope(tau_min, KAPPA) == pytest.approx(0.0, abs=1e-10)
    assert gamma_at_lag_negative(KAPPA, tau_min) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("tau", [0.3, 0.5, 1.0, 3.0])
def test_primary_branch_slope_matches_finite_difference(tau):
    h = 1e-6
    numeric = (primary_branch_T(tau + h, KAPPA) - primary_branch_T(tau - h, KAPPA)) / (2 * h)
    assert primary_branch_slope(tau, KAPPA) == pytest.approx(numeric, rel=1e-6, abs=1e-8)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_secondary_branch_minima_sit_at_superstable_points(n):
    tau_min, period_min = superstable_point(n, KAPPA)
    assert tau_min == pytest.approx((2 * n + 1) * T_BAR / 2, abs=1e-8)
    assert period_min == pytest.approx(T_BAR, abs=1e-8)

    periods = [p.period for p in solve_branch(n, tau_min, KAPPA)]
    assert min(abs(T - T_BAR) for T in periods) < 1e-9


def test_stable_n1_orbit_at_tau_four():
    points = solve_branch(1, 4.0, KAPPA)
    stable = [p for p in points if p.stability is Stability.STABLE]
    assert len(stable) == 1
    orbit = stable[0]
    assert orbit.period == pytest.approx(2.13, abs=0.01)
    assert orbit.gamma == pytest.approx(0.0068, abs=5e-4)
    assert g_roots(1, orbit.gamma)[1].real == pytest.approx(orbit.gamma - 1.0, abs=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_branch_roots_satisfy_existence_condition_and_reappearance(n):
    tau = 4.0
    for point in solve_branch(n, tau, KAPPA):
        assert tau / (n + 1) < point.period < tau / n
        assert periodic_residual_negative(n, point.period, tau, KAPPA) == pytest.approx(0.0, abs=1e-8)
        # 第 n 支是主分支沿 tau -> tau + nT 的平移
        assert primary_branch_T(tau - n * point.period, KAPPA) == pytest.approx(point.period, abs=1e-9)


def test_branch_roots_agree_with_brute_force_scan():
    n, tau = 2, 4.0
    grid = np.linspace(tau / 3 + 1e-6, tau / 2 - 1e-6, 200_001)
    values = periodic_residual_negative(n, grid, tau, KAPPA)
    brute = grid[np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]]
    solved = [p.period for p in solve_branch(n, tau, KAPPA)]
    assert len(solved) == len(brute)
    for a, b in zip(solved, brute):
        assert a == pytest.approx(b, abs=1e-4)


def test_no_branches_without_pulsation():
    assert solve_branch(1, 4.0, 2.0) == []
    assert solve_branch(0, 4.0, 1.5) == []


def test_fold_point_for_kappa_five():
    tau0, period, tau = saddle_node_point(1, KAPPA)
    assert (tau0, period, tau) == pytest.approx((0.3652, 0.8715, 1.2367), abs=1e-3)
    assert gamma_at_lag_negative(KAPPA, tau0) == pytest.approx(2.0, abs=1e-9)
    assert saddle_node_point(3, KAPPA)[2] == pytest.approx(2.951, abs=1e-3)

    # fold 以下无根，以上成对出现
    assert solve_branch(1, tau - 0.05, KAPPA) == []
    pair = solve_branch(1, tau + 0.05, KAPPA)
    assert len(pair) == 2
    assert {p.stability for p in pair} == {Stability.STABLE, Stability.UNSTABLE}


def test_fold_periods_converge_monotonically_to_superstable_period():
    periods = np.array([saddle_node_point(n, KAPPA)[1] for n in range(1, 101)])
    steps = np.diff(periods)
    assert np.all(steps < 0) or np.all(steps > 0)
    assert abs(periods[-1] - T_BAR) < 1e-3


def test_branch_parametric_points_lie_on_their_branch(config):
    lags = default_lags(KAPPA, 3.0, points=50)
    assert np.all(np.diff(lags) > 0)
    assert lags[0] > homoclinic_tau(KAPPA)
    for n in (0, 1, 3):
        for p in branch_parametric(n, KAPPA, lags, config):
            checked = branch_point(n, p.tau, p.period, KAPPA, config)
            assert checked.gamma == pytest.approx(p.gamma, rel=1e-6)
    with pytest.raises(DomainError):
        branch_parametric(1, KAPPA, [0.1])


def test_branch_point_rejects_off_branch_input():
    with pytest.raises(ConsistencyError):
        branch_point(1, 4.0, 2.5, KAPPA)


def test_gamma_is_monotone_along_traced_branch():
    points = branch_parametric(2, KAPPA, default_lags(KAPPA, 6.0, points=300))
    assert gamma_monotonicity_violations(points) == []

    def fake(gamma):
        return BranchPoint(1, 1.0, 1.0, gamma, Stability.STABLE, KAPPA)

    assert gamma_monotonicity_violations([fake(g) for g in (3.0, 2.0, 2.5, 1.0)]) == [1]


def test_loci_skip_kappas_without_pulsation():
    locus = saddle_node_locus(1, [1.5, 2.0, 5.0])
    assert locus.kind is LocusKind.SADDLE_NODE
    assert len(locus.samples) == 1
    kappa, tau, period = locus.samples[0]
    assert (kappa, tau, period) == pytest.approx((5.0, 1.2367, 0.8715), abs=1e-3)

    homoclinic = homoclinic_locus([1.0, 3.0, 5.0])
    assert homoclinic.kind is LocusKind.HOMOCLINIC
    assert [s[0] for s in homoclinic.samples] == [3.0, 5.0]
    assert all(math.isinf(s[2]) for s in homoclinic.samples)


def test_scan_roots_finds_all_sign_changes(config):
    roots = scan_roots(lambda x: np.sin(x), 0.5, 10.0, config.roots, derivative=np.cos)
    assert roots == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-12)
