"""theta 反馈模型错误类型。"""

from __future__ import annotations


class ThetaError(Exception):
    """领域错误基类。"""


class ParameterError(ThetaError, ValueError):
    """参数非法（tau <= 0、I == 0、n 越界等）。"""


class DomainError(ThetaError, ValueError):
    """闭式解在前提条件之外被调用。"""


class StallError(DomainError):
    """状态恰好落在鞍点 theta_+ 上，永远不会再放电。"""


class NoSolutionError(ThetaError):
    """请求的周期解不存在（例如低于同宿点）。"""


class NoPulsationError(NoSolutionError):
    """兴奋态下 kappa <= 2，不可能有自持脉冲。"""


class NoFoldError(NoSolutionError):
    """kappa^2 (n^2 + n) <= 1，该分支上没有鞍结点。"""


class ConsistencyError(ThetaError):
    """输入点不在分支上（存在方程残差过大）。"""


class NotPeriodicError(ThetaError):
    """放电序列不是周期的，或者放电次数不足。"""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class NumericalFailure(ThetaError):
    """数值过程失败（步长下溢、事件数溢出等）。"""


class UsageError(ThetaError):
    """CLI 任务描述非法。"""
