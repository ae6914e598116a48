"""``stepfit kcenter``: weighted k-center of sites on a line."""

import argparse

from stepfit.core.errors import EXIT_OK
from stepfit.models.schema import KCenterReport
from stepfit.services.kcenter.solver import solve_kcenter

from .common import add_output_options, emit, exact, load_kcenter_instance


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("kcenter", help="weighted k-center on the real line")
    parser.add_argument(
        "file", help="site file with 'r [w]' lines, w defaults to 1 ('-' for stdin)"
    )
    parser.add_argument("-k", type=int, required=True, help="number of centers")
    add_output_options(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    inst = load_kcenter_instance(args.file, args.k)
    result = solve_kcenter(inst)
    report = KCenterReport(
        cost=exact(result.cost, args),
        centers=[exact(c, args) for c in result.centers],
        n=len(inst.sites),
        k=inst.k,
        oracle_calls=result.oracle_calls,
    )
    emit(report, args.json)
    return EXIT_OK
