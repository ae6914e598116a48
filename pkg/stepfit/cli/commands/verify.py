"""``stepfit verify``: run both backends and check the optimality certificate."""

import argparse

from stepfit.core.config import Algorithm
from stepfit.core.errors import EXIT_FAILURE, EXIT_OK
from stepfit.models.schema import VerifyReport
from stepfit.services.fitting.service import get_fitting_service

from .common import add_output_options, emit, exact, load_instance


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "verify", help="cross-check the backends and certify the optimum"
    )
    parser.add_argument("file", help="instance file with 'x y w' lines ('-' for stdin)")
    parser.add_argument("-k", type=int, required=True, help="maximum number of steps")
    add_output_options(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    inst = load_instance(args.file, args.k)
    service = get_fitting_service()
    parametric = service.fit(inst, Algorithm.PARAMETRIC)
    bruteforce = service.fit(inst, Algorithm.BRUTEFORCE)
    certificate = service.certify(inst, parametric.eps_star, parametric.step_function)

    agree = parametric.eps_star == bruteforce.eps_star
    problems = list(certificate.problems)
    if not agree:
        problems.append("backends disagree on the optimum")
    report = VerifyReport(
        parametric=exact(parametric.eps_star, args),
        bruteforce=exact(bruteforce.eps_star, args),
        backends_agree=agree,
        certificate_valid=certificate.valid,
        problems=problems,
    )
    emit(report, args.json)
    return EXIT_OK if not problems else EXIT_FAILURE
