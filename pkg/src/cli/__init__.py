from .jobs import JobSpec, Model, OutputFormat, parse_n_list, parse_range
from .datasets import Dataset, cmd_branches, cmd_multipliers, cmd_simulate, cmd_sncurves
from .main import build_parser, main

__all__ = [
    "JobSpec",
    "Model",
    "OutputFormat",
    "parse_n_list",
    "parse_range",
    "Dataset",
    "cmd_branches",
    "cmd_multipliers",
    "cmd_simulate",
    "cmd_sncurves",
    "build_parser",
    "main",
]
