"""dynmaps CLI: dynamical maps, CP/NCP classification and non-Markovianity witnesses."""

import argparse
import logging
import sys

import numpy as np

from dynmaps.cli import commands_decompose, commands_evolve, commands_figure, commands_witness
from dynmaps.cli.options import common_parser, grid_parser, scenario_parser
from dynmaps.config import settings
from dynmaps.errors import InvalidTrace, NotHermitian, NotPSD, NumericalFailure

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# User input is validated into InvalidSpec or pydantic errors before any of these can occur.
NUMERICAL_ERRORS = (NumericalFailure, np.linalg.LinAlgError, NotPSD, NotHermitian, InvalidTrace)


def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = settings.log_level.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level {settings.log_level!r}")
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynmaps",
        description="Reduced dynamical maps of a two-qubit system with correlated initial states.",
        parents=[common_parser()],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = common_parser(suppress_defaults=True)
    commands_decompose.register(subparsers, [common, scenario_parser(required=False)])
    commands_evolve.register(subparsers, [common, scenario_parser(), grid_parser()])
    commands_witness.register(subparsers, [common, scenario_parser(), grid_parser()])
    commands_figure.register(subparsers, [common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        configure_logging(args.verbose)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logger.info(f"dynmaps {args.command} starting")
    try:
        code = args.handler(args)
    except NUMERICAL_ERRORS as e:
        logger.error(f"Numerical failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger.info(f"dynmaps {args.command} finished")
    return code


if __name__ == "__main__":
    sys.exit(main())
