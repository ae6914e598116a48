import json
import sys
from typing import List, Optional

from stepfit.cli.api import build_parser
from stepfit.core.errors import to_exit_code
from stepfit.core.logging import LogContext, get_logger, log_context

logger = get_logger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run the chosen command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    with log_context(LogContext()) as context:
        logger.debug("Running command", extra={"command": args.command, "run_id": context.run_id})
        try:
            return args.handler(args)
        except Exception as exc:
            exit_code, payload = to_exit_code(exc)
            if payload["code"] == "INTERNAL_ERROR":
                logger.exception("Unhandled error", extra={"command": args.command})
            else:
                logger.debug(
                    "Input rejected: %s", payload["message"], extra={"code": payload["code"]}
                )
            if getattr(args, "json", False):
                sys.stderr.write(json.dumps({"error": payload}, default=str) + "\n")
            else:
                sys.stderr.write(f"error: {payload['message']}\n")
            return exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
