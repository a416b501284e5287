"""Command-line entry point for logdisc."""

from __future__ import annotations

import logging
import sys
from typing import Sequence

from logdisc.cli.commands import build_parser
from logdisc.errors import LogdiscError
from logdisc.io.writer import write_report
from logdisc.state.session import RunSession

logger = logging.getLogger("logdisc")


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(level)
    logger.propagate = False


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help and --version exit 0, usage errors exit 2
        return exc.code if isinstance(exc.code, int) else 2

    configure_logging(args.verbose, args.quiet)
    session = RunSession(command=args.command, seed=args.seed)
    try:
        outputs = args.handler(args, session)
        write_report(session.report(outputs).to_dict(), args.out)
    except LogdiscError as exc:
        logger.error("%s: %s", args.command, exc)
        return 1
    if args.out is not None:
        logger.info("report written to %s", args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
