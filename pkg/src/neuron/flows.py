# flows.py
# =========================
# 无耦合 theta 神经元的闭式流（Closed-form flows）
# theta 空间的各区间解 + QIF 电压等价 + 瞬时 kick
# =========================

from __future__ import annotations

import math
from typing import Tuple

from ..errors import DomainError, ParameterError, StallError
from .types import Phase, VoltageEquivalent


TWO_PI = 2.0 * math.pi


def wrap_phase(theta: float) -> Phase:
    """把任意提升角映射到 (-pi, pi]。"""
    wrapped = math.pi - (math.pi - theta) % TWO_PI
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    elif wrapped > math.pi:
        wrapped -= TWO_PI
    return wrapped


def theta_to_voltage(theta: Phase) -> VoltageEquivalent:
    theta = wrap_phase(theta)
    if theta == math.pi:
        return math.inf
    return math.tan(theta / 2.0)


def voltage_to_theta(v: VoltageEquivalent) -> Phase:
    if math.isinf(v):
        return math.pi
    return 2.0 * math.atan(v)


def fixed_points(im: float) -> Tuple[Phase, Phase]:
    """(theta_-, theta_+)：吸引的静息点与阈值鞍点。"""
    _check_magnitude(im, "Im")
    edge = 2.0 * math.atan(im)
    return -edge, edge


def apply_kick(theta: Phase, kappa: float) -> Phase:
    """
    延迟脉冲到达：v -> v + kappa。
    theta = pi 处 1 + cos(theta) = 0，kick 不起作用。
    """
    theta = wrap_phase(theta)
    if theta == math.pi:
        return math.pi
    return 2.0 * math.atan(math.tan(theta / 2.0) + kappa)


# ---------- I < 0 ----------

def flow_negative_between(theta0: Phase, t: float, im: float) -> Phase:
    """两不动点之间：v(t) = -Im tanh(Im t - atanh(v0/Im))，单调趋向 theta_-。"""
    _check_time(t)
    _check_magnitude(im, "Im")
    v0 = theta_to_voltage(theta0)
    if v0 == -im:
        return -2.0 * math.atan(im)
    if not -im < v0 < im:
        if v0 == im:
            raise StallError(f"theta0={theta0} sits on the saddle theta_+")
        raise DomainError(f"theta0={theta0} is not between the fixed points (Im={im})")
    return voltage_to_theta(-im * math.tanh(im * t - math.atanh(v0 / im)))


def flow_negative_above(theta0: Phase, t: float, im: float) -> Phase:
    """鞍点之上：v(t) = -Im coth(Im t - acoth(v0/Im))，有限时间穿过 pi。"""
    _check_time(t)
    _check_magnitude(im, "Im")
    v0 = theta_to_voltage(theta0)
    if not v0 > im:
        raise DomainError(f"theta0={theta0} is not above the saddle (Im={im})")
    return _coth_orbit(v0, t, im)


def flow_negative(theta0: Phase, t: float, im: float) -> Phase:
    """负电流下的统一入口：按 v0 相对 +-Im 的位置选择 tanh / coth 解。"""
    _check_time(t)
    _check_magnitude(im, "Im")
    v0 = theta_to_voltage(theta0)
    if v0 == im:
        raise StallError(f"theta0={theta0} sits on the saddle theta_+")
    if abs(v0) > im:
        return _coth_orbit(v0, t, im)
    return flow_negative_between(theta0, t, im)


def _coth_orbit(v0: float, t: float, im: float) -> Phase:
    # v0 > Im: 向上穿过 pi；v0 < -Im: 从下方回到 theta_-
    anchor = _acoth(v0 / im)
    arg = im * t - anchor
    if arg == 0.0:
        return math.pi
    return voltage_to_theta(-im / math.tanh(arg))


def time_to_fire(theta0: Phase, current: float) -> float:
    """
    从 theta0 出发、无输入时到达 pi 的时间；不会放电时返回 inf。
    theta0 = pi 视为刚放电，返回 0。
    """
    if current == 0:
        raise ParameterError("current must be non-zero")
    a = math.sqrt(abs(current))
    v0 = theta_to_voltage(theta0)
    if math.isinf(v0):
        return 0.0
    if current > 0:
        return (math.pi / 2.0 - math.atan(v0 / a)) / a
    if v0 > a:
        return _acoth(v0 / a) / a
    return math.inf


# ---------- I > 0 ----------

def flow_positive(theta0: Phase, t: float, ip: float) -> Phase:
    """
    v(t) = Ip tan(Ip t + atan(v0/Ip))；自由周期 pi/Ip。
    用相位 psi = atan(v/Ip) 在 (-pi/2, pi/2] 上折返，整圈时精确回到 pi。
    """
    _check_time(t)
    _check_magnitude(ip, "Ip")
    v0 = theta_to_voltage(theta0)
    psi0 = math.atan(v0 / ip)
    psi = math.pi / 2.0 - (math.pi / 2.0 - (psi0 + ip * t)) % math.pi
    if psi <= -math.pi / 2.0:
        psi += math.pi
    if psi == math.pi / 2.0:
        return math.pi
    return voltage_to_theta(ip * math.tan(psi))


# ---------- dispatch ----------

def flow(theta0: Phase, t: float, current: float) -> Phase:
    """按电流符号分派到 flow_negative / flow_positive。"""
    if current == 0:
        raise ParameterError("I = 0 has no closed-form flow here")
    a = math.sqrt(abs(current))
    if current < 0:
        return flow_negative(theta0, t, a)
    return flow_positive(theta0, t, a)


def evolve_voltage(v0: VoltageEquivalent, t: float, current: float) -> VoltageEquivalent:
    """
    QIF 闭式解 dv/dt = I + v^2，用于检验 theta 流与电压流的等价。
    越过 +inf 后从 -inf 继续（即 theta 穿过 pi）。
    """
    _check_time(t)
    if current == 0:
        raise ParameterError("I = 0 has no closed-form flow here")
    a = math.sqrt(abs(current))
    if current > 0:
        base = math.atan(v0 / a)
        phase = base + a * t
        # tan 以 pi 为周期
        phase = math.pi / 2.0 - (math.pi / 2.0 - phase) % math.pi
        if phase <= -math.pi / 2.0:
            phase += math.pi
        if phase == math.pi / 2.0:
            return math.inf
        return a * math.tan(phase)
    if abs(v0) == a:
        return v0
    if abs(v0) < a:
        return -a * math.tanh(a * t - math.atanh(v0 / a))
    arg = a * t - _acoth(v0 / a)
    if arg == 0.0:
        return math.inf
    return -a / math.tanh(arg)


def _acoth(x: float) -> float:
    if math.isinf(x):
        return 0.0
    return math.atanh(1.0 / x)


def _check_time(t: float) -> None:
    if not t >= 0.0:
        raise ParameterError(f"time must be non-negative, got {t}")


def _check_magnitude(value: float, name: str) -> None:
    if not value > 0.0 or math.isinf(value):
        raise ParameterError(f"{name} must be a positive finite number, got {value}")
