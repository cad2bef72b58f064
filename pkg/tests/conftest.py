# tests/conftest.py
# Pytest 配置

import pytest

from src.config import ThetaConfig


def pytest_configure(config):
    """注册自定义 marker"""
    config.addinivalue_line(
        "markers", "slow: smooth-feedback integration runs (seconds to minutes)"
    )
    config.addinivalue_line(
        "markers", "offline: mark test as offline test (pure computation)"
    )


# 默认给所有不标记的测试加上 offline marker
def pytest_collection_modifyitems(config, items):
    """自动标记没有 slow marker 的测试为 offline"""
    for item in items:
        if "slow" not in item.keywords:
            item.add_marker(pytest.mark.offline)


@pytest.fixture
def config() -> ThetaConfig:
    return ThetaConfig.default()


@pytest.fixture
def coarse_config() -> ThetaConfig:
    """光滑模型测试用的粗网格：缩短过渡期，放宽步长。"""
    cfg = ThetaConfig.default()
    cfg.smooth.dt_max = 2e-3
    cfg.smooth.dt_fraction = 5e-4
    cfg.smooth.record_every = 0
    return cfg
