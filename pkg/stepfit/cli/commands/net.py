"""``stepfit net dump``: print a sorting network, one level per line."""

import argparse
import sys

from stepfit.core.errors import EXIT_OK
from stepfit.services.fitting.network import build_network, dump_levels


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("net", help="sorting network utilities")
    actions = parser.add_subparsers(dest="net_command", required=True)
    dump = actions.add_parser("dump", help="print the levels as 'i:j' pairs")
    dump.add_argument("-m", type=int, required=True, help="number of channels")
    dump.set_defaults(handler=run_dump)


def run_dump(args: argparse.Namespace) -> int:
    net = build_network(args.m)
    for line in dump_levels(net):
        sys.stdout.write(line + "\n")
    return EXIT_OK
