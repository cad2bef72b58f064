from .types import (
    BasinKind,
    BasinOutcome,
    EventTrajectory,
    InitialHistory,
    RegimeTag,
    Segment,
    TrajectoryStatus,
)
from .simulator import resume, simulate, theta_at, voltage_at
from .analysis import (
    basin_probe,
    decay_ratio,
    equispaced_history,
    measure_period,
    periodic_orbits,
    seed_periodic_history,
    spikes_per_delay,
    stable_orbit,
)
from .export import event_log, sample_phases, write_event_log, write_trajectory_csv

__all__ = [
    "BasinKind",
    "BasinOutcome",
    "EventTrajectory",
    "InitialHistory",
    "RegimeTag",
    "Segment",
    "TrajectoryStatus",
    "resume",
    "simulate",
    "theta_at",
    "voltage_at",
    "basin_probe",
    "decay_ratio",
    "equispaced_history",
    "measure_period",
    "periodic_orbits",
    "seed_periodic_history",
    "spikes_per_delay",
    "stable_orbit",
    "event_log",
    "sample_phases",
    "write_event_log",
    "write_trajectory_csv",
]
