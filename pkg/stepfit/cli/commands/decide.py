"""``stepfit decide``: is a tolerance achievable with k steps?"""

import argparse

from stepfit.core.errors import EXIT_OK
from stepfit.models.schema import DecisionReport, StatusEnum
from stepfit.services.fitting.decision import decide
from stepfit.utils.parsing import parse_rational

from .common import add_output_options, emit, exact, load_instance, precision_of, step_function_model


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("decide", help="test a tolerance with the greedy oracle")
    parser.add_argument("file", help="instance file with 'x y w' lines ('-' for stdin)")
    parser.add_argument("-k", type=int, required=True, help="maximum number of steps")
    parser.add_argument(
        "--eps", required=True, help="tolerance as a decimal or a 'p/q' fraction"
    )
    add_output_options(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    eps = parse_rational(args.eps)
    inst = load_instance(args.file, args.k)
    outcome = decide(inst, eps)
    report = DecisionReport(
        status=StatusEnum.FEASIBLE if outcome.feasible else StatusEnum.INFEASIBLE,
        eps=exact(eps, args),
        k=inst.k,
        steps_used=outcome.steps_used,
        witness=(
            step_function_model(outcome.witness, precision_of(args))
            if outcome.witness is not None
            else None
        ),
    )
    emit(report, args.json)
    return EXIT_OK
