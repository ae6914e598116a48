import argparse

from stepfit.cli.commands import bench, decide, fit, gen, kcenter, net, verify
from stepfit.core.settings import get_settings

COMMANDS = (fit, decide, kcenter, gen, bench, verify, net)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog=settings.app.PROJECT_NAME,
        description="Optimal weighted L-infinity fitting by k-step functions",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {settings.app.VERSION}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser
