"""``stepfit gen``: write a seeded random instance to standard output."""

import argparse
import sys

from stepfit.core.errors import EXIT_OK, ValidationError
from stepfit.utils.generator import generate_triples, render_triples


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("gen", help="generate a random integer instance")
    parser.add_argument("-n", type=int, required=True, help="number of points")
    parser.add_argument("-k", type=int, default=None, help="k recorded in the header")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--coord-range", type=int, nargs=2, default=(-50, 50), metavar=("LO", "HI")
    )
    parser.add_argument(
        "--weight-range", type=int, nargs=2, default=(1, 9), metavar=("LO", "HI")
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.k is not None and args.k < 1:
        raise ValidationError("k must be a positive integer", details={"k": args.k})
    triples = generate_triples(
        args.n,
        args.seed,
        coord_range=tuple(args.coord_range),
        weight_range=tuple(args.weight_range),
    )
    header = f"stepfit instance n={args.n} seed={args.seed}"
    if args.k is not None:
        header += f" k={args.k}"
    sys.stdout.write(render_triples(triples, header))
    return EXIT_OK
