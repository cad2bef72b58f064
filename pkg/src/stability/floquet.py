# floquet.py
# =========================
# Floquet 分析（Floquet analysis）
# 放电时间映射的 Jacobian J、特征多项式 g(lambda) 及其根
# =========================

from __future__ import annotations

from typing import List, Optional

import numpy as np
from scipy.optimize import brentq

from ..config import ThetaConfig
from ..errors import DomainError
from ..neuron.types import check_branch_index
from .types import Stability, StabilitySpectrum


def fold_gamma(n: int) -> float:
    """第 n 支上鞍结点处的 gamma = (n+1)/n。"""
    check_branch_index(n, minimum=1)
    return (n + 1) / n


def companion_jacobian(n: int, gamma: float) -> np.ndarray:
    """
    (n+1)x(n+1) 伴随矩阵：上对角线全 1，最后一行 (1 - gamma, 0, ..., 0, gamma)。
    n = 0 时退化为 [[1]]。
    """
    check_branch_index(n)
    size = n + 1
    jac = np.zeros((size, size))
    for row in range(n):
        jac[row, row + 1] = 1.0
    jac[n, 0] += 1.0 - gamma
    jac[n, n] += gamma
    return jac


def g_roots(n: int, gamma: float) -> List[complex]:
    """
    g 的 n+1 个根。先解析地除掉 lambda = 1：
    g(lambda) = (lambda - 1) h(lambda)，h = lambda^n + (1 - gamma)(lambda^{n-1} + ... + 1)，
    再对 h 的伴随矩阵求特征值。
    """
    check_branch_index(n)
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    roots: List[complex] = [complex(1.0, 0.0)]
    if n == 0:
        return roots
    if gamma == 1.0:
        # 超稳定：h = lambda^n，n 重零根
        roots.extend([complex(0.0, 0.0)] * n)
        return roots

    companion = np.zeros((n, n))
    companion[0, :] = -(1.0 - gamma)
    companion[1:, :-1] += np.eye(n - 1)
    eig = np.linalg.eigvals(companion)
    ordered = sorted(eig, key=lambda z: (-abs(z), np.angle(z)))
    roots.extend(complex(z) for z in ordered)
    return roots


def max_nontrivial_modulus(n: int, gamma: float) -> float:
    return max((abs(z) for z in g_roots(n, gamma)[1:]), default=0.0)


def classify(n: int, gamma: float, config: Optional[ThetaConfig] = None) -> Stability:
    """
    n = 0 时 h = 1，存在即稳定。
    n >= 1：gamma 接近 1 为超稳定，接近 (n+1)/n 为鞍结点，小于它稳定、大于它不稳定。
    """
    check_branch_index(n)
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    cfg = (config or ThetaConfig.default()).stability
    if n == 0:
        return Stability.STABLE
    if abs(gamma - 1.0) < cfg.superstable_tol:
        return Stability.SUPERSTABLE
    fold = fold_gamma(n)
    if abs(gamma - fold) < cfg.fold_tol:
        return Stability.SADDLE_NODE
    return Stability.STABLE if gamma < fold else Stability.UNSTABLE


def spectrum(n: int, gamma: float, config: Optional[ThetaConfig] = None) -> StabilitySpectrum:
    return StabilitySpectrum(
        n=n,
        gamma=gamma,
        roots=g_roots(n, gamma),
        classification=classify(n, gamma, config),
    )


def perturbation_growth(
    n: int,
    gamma: float,
    iterations: int = 1000,
    seed: int = 0,
) -> np.ndarray:
    """
    迭代线性递推 a_i = J a_{i-1}，返回每步相邻分量差的范数。
    相邻差消去了整体平移（平凡乘子 1）。
    """
    jac = companion_jacobian(n, gamma)
    rng = np.random.default_rng(seed)
    state = rng.standard_normal(n + 1)
    norms = np.empty(iterations + 1)
    norms[0] = np.linalg.norm(np.diff(state))
    for k in range(1, iterations + 1):
        state = jac @ state
        norms[k] = np.linalg.norm(np.diff(state))
    return norms


def exit_gamma(n: int) -> float:
    """数值求出最大非平凡模穿过 1 的 gamma。"""
    fold = fold_gamma(n)
    return float(brentq(lambda g: max_nontrivial_modulus(n, g) - 1.0, 1.0, 2.0 * fold, xtol=1e-14))


def exit_speed(n: int, step: float = 1e-6) -> float:
    """
    鞍结点处离开单位圆的实根的 d lambda / d gamma（中心差分）。
    跨过 fold 时该根始终为正实数，按最大实部挑选。
    """
    fold = fold_gamma(n)

    def leading_real(gamma: float) -> float:
        return max(z.real for z in g_roots(n, gamma)[1:] if abs(z.imag) < 1e-9)

    return (leading_real(fold + step) - leading_real(fold - step)) / (2.0 * step)
