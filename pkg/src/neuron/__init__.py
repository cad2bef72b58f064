from .types import ModelParams, Phase, Regime, VoltageEquivalent
from .flows import (
    apply_kick,
    evolve_voltage,
    fixed_points,
    flow,
    flow_negative,
    flow_negative_above,
    flow_negative_between,
    flow_positive,
    theta_to_voltage,
    time_to_fire,
    voltage_to_theta,
    wrap_phase,
)

__all__ = [
    "ModelParams",
    "Phase",
    "Regime",
    "VoltageEquivalent",
    "apply_kick",
    "evolve_voltage",
    "fixed_points",
    "flow",
    "flow_negative",
    "flow_negative_above",
    "flow_negative_between",
    "flow_positive",
    "theta_to_voltage",
    "time_to_fire",
    "voltage_to_theta",
    "wrap_phase",
]
