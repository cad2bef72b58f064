# jobs.py
# =========================
# CLI 任务描述（Job specification）
# 把 argparse 结果规整成不可变的 JobSpec，并做范围/分辨率校验
# =========================

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from ..errors import UsageError
from ..neuron.types import Regime


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Model(str, Enum):
    DELTA = "delta"
    SMOOTH = "smooth"


Range = Tuple[float, float]


@dataclass(frozen=True)
class JobSpec:
    subcommand: str
    regime: Regime = Regime.NEGATIVE
    current: Optional[float] = None
    kappa: Optional[float] = None
    kappa_range: Optional[Range] = None
    tau_range: Optional[Range] = None
    gamma_range: Optional[Range] = None
    n_values: Tuple[int, ...] = (0,)
    grid: int = 400
    model: Model = Model.DELTA
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    seed_spikes: int = 1
    horizon: Optional[float] = None
    dt: Optional[float] = None

    @property
    def signed_current(self) -> float:
        """未指定 --current 时取 |I| = 1，符号由 regime 决定。"""
        if self.current is not None:
            return self.current
        return -1.0 if self.regime is Regime.NEGATIVE else 1.0

    def validate(self) -> "JobSpec":
        if self.grid < 2:
            raise UsageError(f"--grid must be >= 2, got {self.grid}")
        for name, rng in (("tau", self.tau_range), ("kappa", self.kappa_range), ("gamma", self.gamma_range)):
            if rng is not None and not rng[0] <= rng[1]:
                raise UsageError(f"--{name} range {rng[0]}:{rng[1]} is empty")
        if self.tau_range is not None and self.tau_range[1] <= 0.0:
            raise UsageError("--tau range must contain positive delays")
        if self.gamma_range is not None and self.gamma_range[0] < 0.0:
            raise UsageError("--gamma must be >= 0")
        if not self.n_values:
            raise UsageError("no branch indices given")
        if any(n < 0 for n in self.n_values):
            raise UsageError(f"branch indices must be >= 0, got {list(self.n_values)}")
        if self.current is not None:
            if self.current == 0.0 or not math.isfinite(self.current):
                raise UsageError("--current must be finite and nonzero")
            expected = Regime.NEGATIVE if self.current < 0 else Regime.POSITIVE
            if expected is not self.regime:
                raise UsageError(f"--current {self.current} contradicts --regime {self.regime.value}")
        if self.seed_spikes < 0:
            raise UsageError("--seed-spikes must be >= 0")
        if self.horizon is not None and not self.horizon > 0.0:
            raise UsageError("--horizon must be positive")
        if self.dt is not None and not self.dt > 0.0:
            raise UsageError("--dt must be positive")
        return self


def parse_range(text: str, name: str = "range") -> Range:
    """'a:b' 表示闭区间，单个数值 'a' 表示 (a, a)。"""
    parts = text.split(":")
    if len(parts) > 2:
        raise UsageError(f"--{name}: expected 'a' or 'a:b', got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"--{name}: not a number in {text!r}") from exc
    if not all(math.isfinite(v) for v in values):
        raise UsageError(f"--{name}: values must be finite")
    lo, hi = values[0], values[-1]
    if lo > hi:
        raise UsageError(f"--{name}: empty range {text!r}")
    return lo, hi


def parse_n_list(text: str) -> Tuple[int, ...]:
    """'0,2,3' 或 '0-4'（含端点），也可混用：'0-2,5'。"""
    values = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "-" in chunk:
                lo, hi = (int(x) for x in chunk.split("-", 1))
                if lo > hi:
                    raise UsageError(f"--n: empty range {chunk!r}")
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(chunk))
    except ValueError as exc:
        raise UsageError(f"--n: cannot parse {text!r}") from exc
    if not values:
        raise UsageError("--n: empty list")
    return tuple(sorted(set(values)))
