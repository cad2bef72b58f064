from __future__ import annotations

import math

import numpy as np
import pytest

from src.errors import DomainError, ParameterError
from src.stability.floquet import (
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
from src.stability.types import Stability


def _g(n: int, gamma: float, lam: complex) -> complex:
    return lam ** (n + 1) - gamma * lam ** n - 1 + gamma


@pytest.mark.parametrize("n", range(0, 11))
@pytest.mark.parametrize("gamma_kind", ["0.1", "0.5", "1.2", "fold", "2"])
def test_companion_eigenvalues_match_characteristic_roots(n, gamma_kind):
    if gamma_kind == "fold":
        gamma = fold_gamma(n) if n >= 1 else 1.5
    else:
        gamma = float(gamma_kind)
    roots = g_roots(n, gamma)
    eig = np.linalg.eigvals(companion_jacobian(n, gamma))

    # fold 处 lambda = 1 是 g 的二重根，特征值求解只有 sqrt(eps) 精度
    tol = 1e-6 if n >= 1 and abs(gamma - fold_gamma(n)) < 1e-12 else 1e-10
    assert len(roots) == n + 1 == len(eig)
    for z in eig:
        assert min(abs(z - r) for r in roots) < tol
    for r in roots:
        assert abs(_g(n, gamma, r)) < 1e-9


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_gamma_zero_gives_roots_of_unity_and_gamma_one_is_superstable(n):
    for r in g_roots(n, 0.0):
        assert abs(r) == pytest.approx(1.0, abs=1e-10)
        assert abs(r ** (n + 1) - 1) < 1e-9

    roots = g_roots(n, 1.0)
    assert roots[0] == 1
    assert all(r == 0 for r in roots[1:])
    assert classify(n, 1.0) is Stability.SUPERSTABLE


def test_g_roots_for_n_one_is_gamma_minus_one():
    for gamma in (0.2, 0.9, 1.7, 2.5):
        assert g_roots(1, gamma)[1] == pytest.approx(gamma - 1.0, abs=1e-14)
    with pytest.raises(DomainError):
        g_roots(2, -0.1)
    with pytest.raises(ParameterError):
        g_roots(-1, 0.5)


def test_companion_jacobian_layout():
    jac = companion_jacobian(3, 0.25)
    expected = np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.75, 0.0, 0.0, 0.25],
        ]
    )
    assert np.array_equal(jac, expected)
    assert np.array_equal(companion_jacobian(0, 0.3), np.array([[1.0]]))


@pytest.mark.parametrize("n", range(1, 9))
def test_multiplier_exits_unit_circle_through_plus_one_at_fold(n):
    assert exit_gamma(n) == pytest.approx((n + 1) / n, abs=1e-8)
    # 隐函数求导：h(1) = 0, dh/dgamma = -n, dh/dlambda = (n+1)/2
    assert exit_speed(n) == pytest.approx(2 * n / (n + 1), abs=1e-4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8])
def test_no_root_leaves_the_unit_circle_off_the_positive_real_axis(n):
    fold = fold_gamma(n)
    points = 10_000 if n == 4 else 1000
    for gamma in np.linspace(0.0, (n + 2) / n, points)[1:]:
        roots = g_roots(n, float(gamma))[1:]
        if gamma < fold - 1e-9:
            assert max(abs(z) for z in roots) < 1.0
        elif gamma > fold + 1e-9:
            outside = [z for z in roots if abs(z) >= 1.0]
            assert len(outside) == 1
            assert abs(outside[0].imag) < 1e-9 and outside[0].real > 1.0


def test_classify_thresholds(config):
    assert classify(0, 3.0, config) is Stability.STABLE
    assert classify(2, 1.0, config) is Stability.SUPERSTABLE
    assert classify(2, 1.4, config) is Stability.STABLE
    assert classify(2, 1.5, config) is Stability.SADDLE_NODE
    assert classify(2, 1.6, config) is Stability.UNSTABLE
    assert classify(1, 1.0 + 1e-6, config) is Stability.STABLE
    with pytest.raises(DomainError):
        classify(1, 0.0, config)


def test_spectrum_record():
    spec = spectrum(2, 0.5)
    assert spec.classification is Stability.STABLE
    assert spec.roots[0] == 1
    assert len(spec.nontrivial) == 2
    # h = lambda^2 + 0.5 lambda + 0.5：共轭复根，模长 sqrt(0.5)
    assert spec.max_nontrivial_modulus == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert max_nontrivial_modulus(0, 0.7) == 0.0


@pytest.mark.parametrize("n, gamma", [(1, 0.3), (2, 0.5), (3, 1.1)])
def test_perturbation_decay_rate_matches_leading_multiplier(n, gamma):
    norms = perturbation_growth(n, gamma, iterations=300, seed=3)
    steps = np.arange(100, 301)
    slope = np.polyfit(steps, np.log(norms[100:]), 1)[0]
    rate = math.exp(slope)
    assert rate == pytest.approx(max_nontrivial_modulus(n, gamma), rel=2e-2)


def test_perturbation_grows_beyond_fold():
    norms = perturbation_growth(2, 1.8, iterations=200, seed=1)
    assert norms[-1] > norms[0]
