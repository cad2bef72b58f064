"""src package."""

from loguru import logger

# 库代码不配置日志输出；CLI 入口会重新挂一个 stderr sink。
logger.remove()
