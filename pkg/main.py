import sys

from loguru import logger

from src.cli.main import main


if __name__ == "__main__":
    # 默认 sink 已在 src 包里移除，这里先挂一个，CLI 会按 --log-level 重新配置
    logger.add(sys.stderr, level="WARNING")
    sys.exit(main())
