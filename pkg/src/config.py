# src/config.py
# =========================
# 数值配置（Numerical configuration）
# 各模块的容差、网格、时间窗默认值；可由 config/theta.yaml 覆盖
# =========================

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv


DEFAULT_CONFIG_PATH = Path("config/theta.yaml")


@dataclass
class RootScanConfig:
    """存在方程求根：网格扫描 + 二分 + Newton 修正"""
    grid_points: int = 10_000
    xtol: float = 1e-13
    endpoint_eps: float = 1e-9  # 相对 tau 的开区间收缩量
    newton_steps: int = 3


@dataclass
class StabilityConfig:
    superstable_tol: float = 1e-10
    margin_tol: float = 1e-9
    fold_tol: float = 1e-10
    consistency_tol: float = 1e-8


@dataclass
class EventSimConfig:
    """事件驱动仿真"""
    horizon_delays: float = 200.0
    max_horizon_delays: float = 8000.0
    transient_fraction: float = 0.5
    isi_rel_tol: float = 1e-9
    min_firings: int = 10
    stall_tol: float = 1e-12
    max_events: int = 5_000_000
    sample_dt: float = 0.01


@dataclass
class SmoothConfig:
    """光滑反馈 DDE 积分"""
    dt_fraction: float = 1e-4
    dt_max: float = 1e-3
    transient_delays: float = 100.0
    measure_delays: float = 60.0
    pulse_exponent: int = 5
    spike_time_tol: float = 1e-10
    min_spikes: int = 40
    isi_cluster_tol: float = 1e-3
    max_pattern: int = 16
    record_every: int = 10
    tail_delays: float = 2.0


@dataclass
class LyapunovConfig:
    d0: float = 1e-8
    renorm_interval: float = 1.0
    threshold: float = 0.0
    bootstrap_samples: int = 1000
    confidence: float = 0.95
    seed: int = 20220501


@dataclass
class ContinuationConfig:
    """基于仿真的参数延拓（仅稳定分支）"""
    tau_step: float = 0.05
    transient_delays: float = 30.0
    measure_delays: float = 10.0
    jump_tol: float = 0.05
    max_gaps: int = 3


@dataclass
class OutputConfig:
    directory: str = "."
    schema_version: int = 1


@dataclass
class ThetaConfig:
    version: int = 1
    roots: RootScanConfig = field(default_factory=RootScanConfig)
    stability: StabilityConfig = field(default_factory=StabilityConfig)
    events: EventSimConfig = field(default_factory=EventSimConfig)
    smooth: SmoothConfig = field(default_factory=SmoothConfig)
    lyapunov: LyapunovConfig = field(default_factory=LyapunovConfig)
    continuation: ContinuationConfig = field(default_factory=ContinuationConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @staticmethod
    def default() -> "ThetaConfig":
        return ThetaConfig()

    @classmethod
    def from_dict(cls, data: dict) -> "ThetaConfig":
        """从字典创建配置（忽略未知字段，兼容扩展配置）"""
        data = _as_dict(data)

        version = data.get("version", 1)
        if version != 1:
            raise ValueError(f"Unsupported theta config version: {version}")

        return cls(
            version=version,
            roots=_build_section(RootScanConfig, data.get("roots")),
            stability=_build_section(StabilityConfig, data.get("stability")),
            events=_build_section(EventSimConfig, data.get("events")),
            smooth=_build_section(SmoothConfig, data.get("smooth")),
            lyapunov=_build_section(LyapunovConfig, data.get("lyapunov")),
            continuation=_build_section(ContinuationConfig, data.get("continuation")),
            output=_build_section(OutputConfig, data.get("output")),
        )

    @classmethod
    def from_yaml(cls, path: str | Path) -> "ThetaConfig":
        """从 YAML 文件加载配置"""
        # .env 里的变量可用于 <ENV_VAR> 占位符
        load_dotenv()
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}

        return cls.from_dict(_replace_env_vars(raw))


def load_config(path: Optional[str | Path] = None) -> ThetaConfig:
    """加载配置；文件缺失时使用硬编码默认值。"""
    config_file = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    if not config_file.exists():
        if path is not None:
            raise FileNotFoundError(f"config file not found: {config_file}")
        return ThetaConfig.default()
    return ThetaConfig.from_yaml(config_file)


def _replace_env_vars(obj):
    """
    递归替换 <ENV_VAR> 占位符为环境变量值
    """
    if isinstance(obj, str):
        if obj.startswith("<") and obj.endswith(">"):
            env_var = obj[1:-1]
            return os.environ.get(env_var, obj)
        return obj
    elif isinstance(obj, dict):
        return {k: _replace_env_vars(v) for k, v in obj.items()}
    elif isinstance(obj, list):
        return [_replace_env_vars(item) for item in obj]
    else:
        return obj


def _as_dict(value: object) -> dict:
    """将输入规范化为 dict。"""
    return value if isinstance(value, dict) else {}


def _filter_dataclass_kwargs(dataclass_type, raw: dict) -> dict:
    """过滤 dataclass 未定义的键，避免配置扩展字段导致构造失败。"""
    allowed_keys = {f.name for f in fields(dataclass_type)}
    return {k: v for k, v in _as_dict(raw).items() if k in allowed_keys}


def _build_section(dataclass_type, raw: object):
    """按默认值的类型做强制转换，YAML 里的 "1e-9" 之类字符串也能接受。"""
    defaults = dataclass_type()
    kwargs = {}
    for key, value in _filter_dataclass_kwargs(dataclass_type, _as_dict(raw)).items():
        current = getattr(defaults, key)
        if isinstance(current, bool):
            kwargs[key] = bool(value)
        elif isinstance(current, int):
            kwargs[key] = int(float(value))
        elif isinstance(current, float):
            kwargs[key] = float(value)
        else:
            kwargs[key] = value
    return dataclass_type(**kwargs)
