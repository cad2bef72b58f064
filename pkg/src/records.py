"""
数据集文件写出（CSV / JSON）。
CSV 第一行是带版本号的 schema 注释；浮点数一律用 repr，保证同一输入逐字节相同。
"""

from __future__ import annotations

import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from loguru import logger


SCHEMA_VERSION = 1


def schema_tag(name: str, version: int = SCHEMA_VERSION) -> str:
    return f"{name}/v{version}"


def format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def json_safe(value: Any) -> Any:
    """JSON 不接受 inf/nan：转成字符串；numpy 标量转成 Python 标量。"""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Mapping):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, complex):
        return [json_safe(value.real), json_safe(value.imag)]
    if hasattr(value, "tolist"):
        return json_safe(value.tolist())
    if isinstance(value, float):
        return float(value) if math.isfinite(value) else repr(float(value))
    return value


def write_csv(
    path: str | Path,
    schema: str,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    version: int = SCHEMA_VERSION,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# schema: {schema_tag(schema, version)}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    logger.info(f"wrote {count} rows to {path} ({schema})")
    return path


def write_json(
    path: str | Path,
    schema: str,
    payload: Mapping[str, Any],
    version: int = SCHEMA_VERSION,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"schema": schema_tag(schema, version), **json_safe(payload)}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, sort_keys=True, indent=2, allow_nan=False)
        f.write("\n")
    logger.info(f"wrote {path} ({schema})")
    return path
