"""``stepfit bench``: time both backends on generated instances (CSV)."""

import argparse
import csv
import statistics
import sys
from typing import List

from stepfit.core.config import Algorithm
from stepfit.core.errors import EXIT_OK, SolverError, ValidationError
from stepfit.core.logging import get_logger
from stepfit.models.domain import Instance
from stepfit.models.schema import BenchRow
from stepfit.services.fitting.service import get_fitting_service
from stepfit.utils.generator import generate_triples

logger = get_logger(__name__)

CSV_FIELDS = ["n", "algorithm", "millis", "oracle_calls", "max_active"]


def _sizes(text: str) -> List[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size list: {text!r}")
    if not sizes or any(n < 1 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="benchmark the solver backends")
    parser.add_argument("--sizes", type=_sizes, required=True, help="comma separated n values")
    parser.add_argument("-k", type=int, required=True, help="steps (capped at n)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repetitions", type=int, default=1)
    parser.add_argument(
        "--max-bruteforce-n",
        type=int,
        default=400,
        help="skip the quadratic backend above this n",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise ValidationError("k must be a positive integer", details={"k": args.k})
    if args.repetitions < 1:
        raise ValidationError("repetitions must be positive")

    service = get_fitting_service()
    writer = csv.DictWriter(sys.stdout, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()

    for n in args.sizes:
        inst = Instance.from_triples(generate_triples(n, args.seed * 1_000_003 + n), min(args.k, n))
        algorithms = [Algorithm.PARAMETRIC]
        if n <= args.max_bruteforce_n:
            algorithms.append(Algorithm.BRUTEFORCE)

        optima = {}
        for algorithm in algorithms:
            runs = [service.fit(inst, algorithm) for _ in range(args.repetitions)]
            optima[algorithm] = runs[0].eps_star
            row = BenchRow(
                n=n,
                algorithm=algorithm,
                millis=round(statistics.median(r.elapsed_ms for r in runs), 3),
                oracle_calls=max(r.oracle_calls for r in runs),
                max_active=runs[0].max_active,
            )
            writer.writerow(row.model_dump(mode="json"))
            sys.stdout.flush()

        if len(set(optima.values())) > 1:
            raise SolverError(
                "backends disagree on the optimum",
                details={"n": n, **{a.value: str(v) for a, v in optima.items()}},
            )
        logger.info("Benchmarked size", extra={"n": n, "eps_star": str(optima[Algorithm.PARAMETRIC])})
    return EXIT_OK
