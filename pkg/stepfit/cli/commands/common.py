"""Helpers shared by the sub-commands."""

import argparse
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, TextIO

from pydantic import BaseModel

from stepfit.core.settings import get_settings
from stepfit.models.domain import Instance, KCenterInstance, Site, StepFunction, WeightedPoint
from stepfit.models.schema import ExactValue, StepFunctionModel, exact_values
from stepfit.utils.parsing import open_input, read_point_records, read_site_records


def add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help="significant digits of decimal output (default: STEPFIT_PRECISION)",
    )


def precision_of(args: argparse.Namespace) -> int:
    precision = getattr(args, "precision", None)
    return precision if precision and precision > 0 else get_settings().solver.PRECISION


def load_instance(path: Optional[str], k: int) -> Instance:
    """Read an ``x y w`` file; points are sorted by x here."""
    stream = open_input(path)
    try:
        records = read_point_records(stream)
    finally:
        if stream is not sys.stdin:
            stream.close()
    return Instance.from_points((WeightedPoint(x, y, w) for x, y, w in records), k)


def load_kcenter_instance(path: Optional[str], k: int) -> KCenterInstance:
    stream = open_input(path)
    try:
        records = read_site_records(stream)
    finally:
        if stream is not sys.stdin:
            stream.close()
    return KCenterInstance(tuple(Site(r, w) for r, w in records), k)


def step_function_model(f: StepFunction, precision: int) -> StepFunctionModel:
    return StepFunctionModel(
        breakpoints=exact_values(f.breakpoints, precision),
        values=exact_values(f.values, precision),
    )


def _render(value: Any) -> str:
    if isinstance(value, dict) and set(value) == {"exact", "decimal"}:
        return f"{value['exact']} (~{value['decimal']})"
    if isinstance(value, dict):
        return "; ".join(f"{k}: {_render(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)


def emit(report: BaseModel, as_json: bool, out: Optional[TextIO] = None) -> None:
    """Print a report as indented JSON or as aligned ``key: value`` lines."""
    out = out or sys.stdout
    if as_json:
        out.write(report.model_dump_json(indent=2) + "\n")
        return
    data: Dict[str, Any] = report.model_dump(mode="json")
    width = max(len(key) for key in data)
    lines: List[str] = [f"{key.ljust(width)}  {_render(value)}" for key, value in data.items()]
    out.write("\n".join(lines) + "\n")


def exact(value: Fraction, args: argparse.Namespace) -> ExactValue:
    return ExactValue.of(value, precision_of(args))
