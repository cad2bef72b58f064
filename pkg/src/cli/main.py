# main.py
# =========================
# 命令行入口（Command-line entry）
# 子命令：branches / sncurves / multipliers / simulate
# 退出码：0 成功，2 用法错误，3 无解，4 数值失败
# =========================

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import yaml
from loguru import logger

from ..config import ThetaConfig, load_config
from ..errors import NoSolutionError, ParameterError, ThetaError, UsageError
from ..neuron.types import Regime
from ..records import write_csv, write_json
from .datasets import Dataset, cmd_branches, cmd_multipliers, cmd_simulate, cmd_sncurves
from .jobs import JobSpec, Model, OutputFormat, parse_n_list, parse_range


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_SOLUTION = 3
EXIT_NUMERICAL = 4

SUBCOMMANDS = ("branches", "sncurves", "multipliers", "simulate")

# 数据集 schema -> CSV 旁边的元数据文件 schema
SIDECAR_SCHEMAS = {"event_trajectory": "event_log", "dde_trajectory": "dde_run"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autapse",
        description="Periodic solutions, bifurcation curves and simulations of a theta neuron with delayed self-feedback.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--config", default=None, help="YAML config file (defaults: config/theta.yaml, then built-ins).")
    parser.add_argument("--log-level", default="WARNING", help="loguru level for the stderr sink.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG.")
    parser.add_argument("--workers", type=int, default=1, help="Process pool size for branch sweeps.")

    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        p.add_argument("--regime", choices=[r.value for r in Regime], default=Regime.NEGATIVE.value)
        p.add_argument("--current", type=float, default=None, help="Bias current I; defaults to -1 or +1 by regime.")
        p.add_argument("--kappa", default=None, help="Feedback strength, or a range a:b for sncurves.")
        p.add_argument("--tau", default=None, help="Delay, or a range a:b.")
        p.add_argument("--n", default=None, help="Branch indices, e.g. 0,1,3 or 0-4.")
        p.add_argument("--nmax", type=int, default=None, help="Shorthand for --n 0-NMAX.")
        p.add_argument("--grid", type=int, default=400, help="Samples per branch / curve / sweep.")
        p.add_argument("--model", choices=[m.value for m in Model], default=Model.DELTA.value)
        p.add_argument("--out", default=None, help="Output file; defaults to <output.directory>/<schema>.<format>.")
        p.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
        p.add_argument("--seed-spikes", type=int, default=1, help="Spikes placed in the initial history.")
        p.add_argument("--horizon", type=float, default=None, help="Simulated time.")
        p.add_argument("--dt", type=float, default=None, help="Target step of the smooth-model integrator.")
        p.add_argument("--gamma", default=None, help="Stability parameter value or range a:b (multipliers).")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    kappa, kappa_range = None, None
    if args.kappa is not None:
        if args.subcommand == "sncurves":
            kappa_range = parse_range(args.kappa, "kappa")
        else:
            lo, hi = parse_range(args.kappa, "kappa")
            if lo != hi:
                raise UsageError(f"{args.subcommand}: --kappa takes a single value")
            kappa = lo

    if args.n is not None and args.nmax is not None:
        raise UsageError("use either --n or --nmax")
    if args.nmax is not None:
        if args.nmax < 0:
            raise UsageError("--nmax must be >= 0")
        n_values = tuple(range(args.nmax + 1))
    elif args.n is not None:
        n_values = parse_n_list(args.n)
    else:
        n_values = (0,)

    spec = JobSpec(
        subcommand=args.subcommand,
        regime=Regime(args.regime),
        current=args.current,
        kappa=kappa,
        kappa_range=kappa_range,
        tau_range=parse_range(args.tau, "tau") if args.tau is not None else None,
        gamma_range=parse_range(args.gamma, "gamma") if args.gamma is not None else None,
        n_values=n_values,
        grid=args.grid,
        model=Model(args.model),
        out=Path(args.out) if args.out else None,
        format=OutputFormat(args.format),
        seed_spikes=args.seed_spikes,
        horizon=args.horizon,
        dt=args.dt,
    )
    return spec.validate()


def build_dataset(spec: JobSpec, config: ThetaConfig, workers: int = 1) -> Dataset:
    if spec.subcommand == "branches":
        return cmd_branches(spec, config, workers)
    if spec.subcommand == "sncurves":
        return cmd_sncurves(spec, config)
    if spec.subcommand == "multipliers":
        return cmd_multipliers(spec, config)
    if spec.subcommand == "simulate":
        return cmd_simulate(spec, config)
    raise UsageError(f"unknown subcommand {spec.subcommand!r}")


def write_dataset(dataset: Dataset, spec: JobSpec, config: ThetaConfig) -> Path:
    """
    写出数据集；CSV 只有表格，仿真元数据（事件日志 / 运行摘要）另写到同名的 .meta.json。
    """
    out = spec.out or Path(config.output.directory) / f"{dataset.schema}.{spec.format.value}"
    version = config.output.schema_version
    if spec.format is OutputFormat.JSON:
        return write_json(out, dataset.schema, dataset.as_payload(), version)
    path = write_csv(out, dataset.schema, dataset.columns, dataset.rows, version)
    if dataset.schema in SIDECAR_SCHEMAS:
        write_json(sidecar_path(path), SIDECAR_SCHEMAS[dataset.schema], dataset.meta, version)
    return path


def sidecar_path(path: Path) -> Path:
    return path.with_name(f"{path.stem}.meta.json")


def configure_logging(level: str, verbose: int) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.verbose)

    try:
        config = load_config(args.config)
    except (FileNotFoundError, ValueError, yaml.YAMLError) as exc:
        logger.error(f"config: {exc}")
        return EXIT_USAGE

    try:
        spec = job_from_args(args)
        dataset = build_dataset(spec, config, max(1, args.workers))
        path = write_dataset(dataset, spec, config)
    except (UsageError, ParameterError) as exc:
        logger.error(f"usage: {exc}")
        return EXIT_USAGE
    except NoSolutionError as exc:
        logger.error(f"no solution: {exc}")
        return EXIT_NO_SOLUTION
    except (ThetaError, ValueError, ArithmeticError) as exc:
        logger.exception(f"numerical failure: {exc}")
        return EXIT_NUMERICAL

    logger.info(f"{spec.subcommand}: {len(dataset.rows)} rows -> {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
