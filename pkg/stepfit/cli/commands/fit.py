"""``stepfit fit``: optimal k-step function for an instance file."""

import argparse

from stepfit.core.config import Algorithm
from stepfit.core.errors import EXIT_OK
from stepfit.core.settings import get_settings
from stepfit.models.schema import RunReport, exact_values
from stepfit.services.fitting.service import get_fitting_service

from .common import add_output_options, emit, exact, load_instance, precision_of


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("fit", help="compute an optimal k-step function")
    parser.add_argument("file", help="instance file with 'x y w' lines ('-' for stdin)")
    parser.add_argument("-k", type=int, required=True, help="maximum number of steps")
    parser.add_argument(
        "--algorithm",
        choices=[a.value for a in Algorithm],
        default=None,
        help="solver backend (default: STEPFIT_DEFAULT_ALGORITHM)",
    )
    add_output_options(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    inst = load_instance(args.file, args.k)
    algorithm = (
        Algorithm(args.algorithm)
        if args.algorithm
        else get_settings().solver.DEFAULT_ALGORITHM
    )
    result = get_fitting_service().fit(inst, algorithm)
    precision = precision_of(args)
    report = RunReport(
        eps_star=exact(result.eps_star, args),
        breakpoints=exact_values(result.step_function.breakpoints, precision),
        values=exact_values(result.step_function.values, precision),
        algorithm=result.algorithm,
        n=result.n,
        k=result.k,
        oracle_calls=result.oracle_calls,
        elapsed_ms=round(result.elapsed_ms, 3),
        max_active=result.max_active,
    )
    emit(report, args.json)
    return EXIT_OK
