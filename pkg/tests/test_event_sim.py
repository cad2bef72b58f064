from __future__ import annotations

import json
import math

import numpy as np
import pytest

from src.branches.excitable import homoclinic_tau
from src.branches.oscillatory import solve_branch_pos
from src.errors import NoSolutionError, NotPeriodicError, ParameterError
from src.events.analysis import (
    basin_probe,
    decay_ratio,
    equispaced_history,
    measure_period,
    periodic_orbits,
    perturbed_history,
    seed_periodic_history,
    settle,
    spikes_per_delay,
    stable_orbit,
)
from src.events.export import sample_phases, write_event_log, write_trajectory_csv
from src.events.simulator import resume, simulate, theta_at
from src.events.types import BasinKind, InitialHistory, TrajectoryStatus
from src.neuron.types import ModelParams
from src.stability.floquet import max_nontrivial_modulus


EXCITABLE = ModelParams(current=-1.0, kappa=5.0, tau=4.0)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_seeded_history_reproduces_branch_period(n, config):
    point = stable_orbit(EXCITABLE, n, config)
    traj = simulate(EXCITABLE, seed_periodic_history(point), 40 * EXCITABLE.tau, config)

    isi = np.diff(traj.firing_times)
    assert len(isi) > 20
    assert np.max(np.abs(isi - point.period)) < 1e-8
    assert spikes_per_delay(traj.firing_times, EXCITABLE.tau) == n
    assert traj.status is TrajectoryStatus.ACTIVE


def test_kick_times_follow_firings_by_one_delay(config):
    point = stable_orbit(EXCITABLE, 1, config)
    traj = simulate(EXCITABLE, seed_periodic_history(point), 30.0, config)
    expected = [t + EXCITABLE.tau for t in traj.firing_times if t + EXCITABLE.tau <= traj.t_end_sim]
    assert traj.kick_times == pytest.approx(expected, abs=1e-12)


def test_physical_units_rescale_the_period(config):
    physical = ModelParams(current=-4.0, kappa=10.0, tau=2.0)
    unit = [p.period for p in periodic_orbits(EXCITABLE, 2, config)]
    scaled = [p.period for p in periodic_orbits(physical, 2, config)]
    assert scaled == pytest.approx([T / 2.0 for T in unit], rel=1e-12)

    point = stable_orbit(physical, 2, config)
    traj = simulate(physical, seed_periodic_history(point), 30 * physical.tau, config)
    period, n = measure_period(traj, config=config)
    assert period == pytest.approx(point.period, rel=1e-9)
    assert n == 2


def test_resume_is_bit_identical_to_a_single_run(config):
    history = equispaced_history(EXCITABLE.tau, 3)
    whole = simulate(EXCITABLE, history, 300.0, config)

    first = simulate(EXCITABLE, history, 120.0, config)
    rest = resume(first, 300.0, config)
    assert rest.firing_times == whole.firing_times
    assert rest.kick_times == whole.kick_times
    assert len(first.firing_times) < len(rest.firing_times)

    with pytest.raises(ParameterError):
        resume(rest, 100.0, config)


def test_perturbation_decays_at_leading_multiplier(config):
    point = stable_orbit(EXCITABLE, 1, config)
    seeds = list(seed_periodic_history(point).seed_firings)
    seeds[0] += 1e-4
    history = InitialHistory(seed_firings=tuple(seeds), theta0=math.pi)
    traj = simulate(EXCITABLE, history, 400 * EXCITABLE.tau, config)

    # n = 1 时唯一的非平凡乘子是 gamma - 1，ISI 偏差严格几何衰减
    rate = decay_ratio(traj.firing_times, point.period)
    assert rate == pytest.approx(max_nontrivial_modulus(1, point.gamma), rel=1e-2)


def test_small_perturbation_returns_to_target_branch(config):
    outcome = basin_probe(EXCITABLE, 2, 1e-3, config, recover_tol=1e-3)
    assert outcome.kind is BasinKind.RECOVERED
    assert outcome.n == 2


def test_short_delay_below_homoclinic_comes_to_rest(config):
    params = ModelParams(current=-1.0, kappa=5.0, tau=0.2)
    traj = simulate(params, equispaced_history(params.tau, 1), 20.0, config)
    assert traj.simulated_firings == []
    assert traj.status is TrajectoryStatus.RESTING
    assert theta_at(traj, 20.0) == pytest.approx(-math.pi / 2, abs=1e-6)
    with pytest.raises(NotPeriodicError):
        measure_period(traj, config=config)
    with pytest.raises(NoSolutionError):
        stable_orbit(params, 0, config)


def test_oscillatory_free_period_without_feedback(config):
    params = ModelParams(current=1.0, kappa=1e-12, tau=1.0)
    traj = simulate(params, equispaced_history(params.tau, 1), 30.0, config)
    isi = np.diff(traj.firing_times)
    assert isi == pytest.approx(np.full(len(isi), math.pi), abs=1e-9)


def test_history_validation():
    with pytest.raises(ParameterError):
        InitialHistory(seed_firings=(0.0, -1.0), theta0=math.pi)
    with pytest.raises(ParameterError):
        simulate(EXCITABLE, InitialHistory(seed_firings=(-5.0,), theta0=0.0), 10.0)
    with pytest.raises(ParameterError):
        simulate(EXCITABLE, equispaced_history(4.0, 1), 0.0)
    with pytest.raises(ParameterError):
        equispaced_history(4.0, 0)


def test_decay_ratio_needs_resolvable_deviations():
    with pytest.raises(NotPeriodicError):
        decay_ratio([0.0, 1.0, 2.0, 3.0], 1.0)


def test_trajectory_export(tmp_path, config):
    point = stable_orbit(EXCITABLE, 0, config)
    traj = simulate(EXCITABLE, seed_periodic_history(point), 10.0, config)

    times, thetas = sample_phases(traj, 0.5)
    assert times[0] == 0.0 and thetas[0] == math.pi
    assert np.all((thetas > -math.pi) & (thetas <= math.pi))

    csv_path = write_trajectory_csv(traj, tmp_path / "traj.csv", dt=0.5, config=config)
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# schema: event_trajectory/v1"
    assert lines[1] == "t,theta"
    assert len(lines) == 2 + len(times)

    log_path = write_event_log(traj, tmp_path / "log.json", config)
    document = json.loads(log_path.read_text(encoding="utf-8"))
    assert document["schema"] == "event_log/v1"
    assert document["firing_times"] == pytest.approx(traj.simulated_firings)
    assert document["params"] == {"current": -1.0, "kappa": 5.0, "tau": 4.0}


def test_large_perturbations_are_rebuilt_inside_the_delay_window(config):
    point = stable_orbit(EXCITABLE, 1, config)
    for delta in (3.0, -3.0, 0.7, -0.5):
        history = perturbed_history(point, delta, EXCITABLE.tau)
        assert history.seed_firings[-1] == 0.0
        assert all(-EXCITABLE.tau < t <= 0.0 for t in history.seed_firings)
    # 移到 -tau 之前的放电已送达，只剩 t = 0 的那次
    assert perturbed_history(point, -3.0, EXCITABLE.tau).seed_firings == (0.0,)
    assert perturbed_history(point, 3.0, EXCITABLE.tau).seed_firings == pytest.approx((-3.0 + point.period, 0.0))


def test_unperturbed_and_tiny_perturbations_recover(config):
    assert basin_probe(EXCITABLE, 1, 0.0, config).kind is BasinKind.RECOVERED
    assert basin_probe(EXCITABLE, 1, 1e-6, config).kind is BasinKind.RECOVERED


@pytest.mark.parametrize("delta", [-1.0, -0.5, 0.7, 3.0, -3.0])
def test_large_perturbations_report_a_real_outcome(delta, config):
    outcome = basin_probe(EXCITABLE, 1, delta, config)
    assert outcome.kind in set(BasinKind)
    # 收敛回原分支只能是 RECOVERED
    assert not (outcome.kind is BasinKind.SWITCHED and outcome.n == 1)
    if outcome.kind is BasinKind.SWITCHED:
        assert outcome.n is not None and outcome.n != 1


@pytest.mark.parametrize("seeds", [1, 2, 3])
def test_weakly_stable_coexisting_orbits_settle(seeds, config):
    params = ModelParams(current=-0.01, kappa=1.0, tau=20.0)
    run = settle(params, equispaced_history(params.tau, seeds), config)
    assert run.periodic, run.reason
    assert run.n == seeds - 1
    assert run.period == pytest.approx(stable_orbit(params, run.n, config).period, rel=1e-8)
    if seeds == 2:
        assert run.period == pytest.approx(10.5812, abs=1e-3)
    if seeds == 3:
        assert run.period == pytest.approx(7.08045, abs=1e-4)


def test_settle_gives_up_on_a_resting_neuron(config):
    params = ModelParams(current=-1.0, kappa=5.0, tau=0.2)
    run = settle(params, equispaced_history(params.tau, 1), config)
    assert not run.periodic
    assert run.trajectory.status is TrajectoryStatus.RESTING
    assert run.trajectory.t_end_sim == pytest.approx(200 * params.tau)


def test_kick_at_homoclinic_delay_lands_on_the_saddle(config):
    params = ModelParams(current=-1.0, kappa=5.0, tau=homoclinic_tau(5.0))
    traj = simulate(params, InitialHistory(seed_firings=(0.0,), theta0=math.pi), 50.0, config)
    assert traj.simulated_firings == []
    assert traj.status is TrajectoryStatus.STALLED
    assert traj.v_state == 1.0
    assert theta_at(traj, 50.0) == pytest.approx(math.pi / 2, abs=1e-12)


def test_oscillatory_runs_settle_on_stable_branch_roots(config):
    params = ModelParams(current=1.0, kappa=2.0, tau=4.0)
    stable = [p for n in range(4) for p in solve_branch_pos(n, 4.0, 2.0, config) if p.stability.is_attracting]
    assert stable
    for point in stable:
        traj = simulate(params, seed_periodic_history(point), 60 * params.tau, config)
        period, n = measure_period(traj, config=config)
        assert n == point.n
        assert period == pytest.approx(point.period, rel=1e-9)

    run = settle(params, equispaced_history(params.tau, 2), config)
    assert run.periodic, run.reason
    candidates = [p.period for p in stable if p.n == run.n]
    assert candidates
    assert min(abs(run.period - T) for T in candidates) < 1e-6


def test_multipliers_of_smaller_branches_sit_closer_to_the_unit_circle(config):
    margins = []
    for n in (1, 2, 3):
        point = stable_orbit(EXCITABLE, n, config)
        margins.append(1.0 - max_nontrivial_modulus(n, point.gamma))
    assert all(m > 0 for m in margins)
    assert margins == sorted(margins) and len(set(margins)) == 3
