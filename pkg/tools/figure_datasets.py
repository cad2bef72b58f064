#!/usr/bin/env python3
# tools/figure_datasets.py
# =========================
# 图表数据集批量生成与校验
# 逐条调用 CLI，把分支图、折叠曲线、乘子扫描和仿真轨迹写到一个目录里；
# --record 把 sha256 写进 docs/checksums.sha256，--check 与之比对
# =========================

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path
from typing import Dict, List

from loguru import logger

# 添加项目根目录到 Python 路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.main import EXIT_OK, main as autapse_main


MANIFEST = project_root / "docs" / "checksums.sha256"

# 文件名 -> 参数（不含 --out）；与 docs/COOKBOOK.md 一一对应
FAST_JOBS: Dict[str, List[str]] = {
    "multipliers_superstable.csv": ["multipliers", "--gamma", "1", "--n", "1-3"],
    "multipliers_unity.csv": ["multipliers", "--gamma", "0", "--n", "1"],
    "coexisting_seed1.json": [
        "simulate", "--current=-0.01", "--kappa", "1", "--tau", "20", "--seed-spikes", "1",
        "--horizon", "400", "--format", "json",
    ],
    "coexisting_seed2.json": [
        "simulate", "--current=-0.01", "--kappa", "1", "--tau", "20", "--seed-spikes", "2",
        "--horizon", "400", "--format", "json",
    ],
    "coexisting_seed3.json": [
        "simulate", "--current=-0.01", "--kappa", "1", "--tau", "20", "--seed-spikes", "3",
        "--horizon", "400", "--format", "json",
    ],
    "multipliers_sweep.csv": ["multipliers", "--gamma", "0:3", "--n", "1-4", "--grid", "301"],
    "multipliers_k5_tau4.csv": ["multipliers", "--kappa", "5", "--tau", "4", "--n", "0-4"],
    "branches_excitable_k5.csv": ["branches", "--kappa", "5", "--tau", "0:10", "--nmax", "4"],
    "sncurves_excitable.csv": ["sncurves", "--kappa", "2.05:10", "--nmax", "4"],
    "branches_oscillatory_k2.csv": ["branches", "--regime", "pos", "--kappa", "2", "--tau", "0:12", "--nmax", "3"],
    "branches_inhibitory_km2.csv": ["branches", "--regime", "pos", "--kappa=-2", "--tau", "0:12", "--nmax", "3"],
    "sncurves_oscillatory.csv": ["sncurves", "--regime", "pos", "--kappa=-3:3", "--n", "1-3"],
    "simulate_delta_k5_tau4.json": [
        "simulate", "--kappa", "5", "--tau", "4", "--seed-spikes", "2", "--format", "json",
    ],
}

SLOW_JOBS: Dict[str, List[str]] = {
    "multistable_smooth_n1.csv": [
        "simulate", "--model", "smooth", "--kappa", "2", "--tau", "4", "--seed-spikes", "2", "--horizon", "800",
    ],
    "multistable_smooth_n2.csv": [
        "simulate", "--model", "smooth", "--kappa", "2", "--tau", "4", "--seed-spikes", "3", "--horizon", "800",
    ],
    "branches_smooth_k2.csv": [
        "branches", "--model", "smooth", "--kappa", "2", "--tau", "2:8", "--seed-spikes", "1",
    ],
    "chaos_route_tau2.9.csv": [
        "simulate", "--model", "smooth", "--regime", "pos", "--kappa=-1", "--tau", "2.9", "--horizon", "600",
    ],
    "chaos_route_tau3.05.csv": [
        "simulate", "--model", "smooth", "--regime", "pos", "--kappa=-1", "--tau", "3.05", "--horizon", "600",
    ],
    "chaos_route_tau3.3.csv": [
        "simulate", "--model", "smooth", "--regime", "pos", "--kappa=-1", "--tau", "3.3", "--horizon", "600",
    ],
}


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def read_manifest(path: Path = MANIFEST) -> Dict[str, str]:
    """sha256sum 格式：'<hex>  <文件名>'，# 开头为注释。"""
    if not path.exists():
        return {}
    entries = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        digest, name = line.split(maxsplit=1)
        entries[name] = digest
    return entries


def write_manifest(entries: Dict[str, str], path: Path = MANIFEST) -> None:
    lines = ["# autapse dataset checksums (sha256sum format)"]
    lines += [f"{entries[name]}  {name}" for name in sorted(entries)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run_jobs(jobs: Dict[str, List[str]], out_dir: Path, workers: int) -> Dict[str, str]:
    """返回 文件名 -> sha256；失败的任务不在结果里。"""
    digests = {}
    for name, argv in jobs.items():
        target = out_dir / name
        code = autapse_main(["--workers", str(workers)] + argv + ["--out", str(target)])
        if code != EXIT_OK:
            logger.error(f"{name}: exit code {code}")
            continue
        digests[name] = sha256_of(target)
        logger.info(f"{name} written ({digests[name][:12]})")
    return digests


def check(digests: Dict[str, str], expected: Dict[str, str]) -> List[str]:
    """与清单不符的文件名；清单里没有的文件只提示。"""
    mismatched = []
    for name, digest in digests.items():
        if name not in expected:
            logger.warning(f"{name}: no recorded checksum")
        elif expected[name] != digest:
            logger.error(f"{name}: sha256 {digest} != recorded {expected[name]}")
            mismatched.append(name)
    return mismatched


def main() -> int:
    parser = argparse.ArgumentParser(description="Regenerate the figure datasets")
    parser.add_argument("--out-dir", default="data", help="Target directory")
    parser.add_argument("--slow", action="store_true", help="Also run the smooth-feedback integrations")
    parser.add_argument("--workers", type=int, default=1)
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--record", action="store_true", help="Write the checksums into docs/checksums.sha256")
    mode.add_argument("--check", action="store_true", help="Compare against docs/checksums.sha256")
    args = parser.parse_args()

    logger.remove()
    logger.add(sys.stderr, level="INFO")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    jobs = dict(FAST_JOBS)
    if args.slow:
        jobs.update(SLOW_JOBS)
    digests = run_jobs(jobs, out_dir, args.workers)
    failed = sorted(set(jobs) - set(digests))
    if failed:
        logger.error(f"{len(failed)} of {len(jobs)} datasets failed: {failed}")
        return 1

    if args.record:
        write_manifest({**read_manifest(), **digests})
        logger.info(f"recorded {len(digests)} checksums in {MANIFEST}")
    elif args.check and check(digests, read_manifest()):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
