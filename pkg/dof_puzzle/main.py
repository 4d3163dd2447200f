import argparse
import logging
import sys
from typing import List, Optional

from dof_puzzle.config.config import (
    DEFAULT_ETA,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    LOG_LEVEL,
)
from dof_puzzle.handlers import (
    EXIT_USAGE,
    construct_command,
    error_handler,
    score_command,
    solve_command,
    sweep_command,
    verify_command,
)

logger = logging.getLogger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", choices=LOG_LEVELS, help="override LOG_LEVEL")
    common.add_argument("--timings", action="store_true", help="include elapsed seconds in reports")

    parser = argparse.ArgumentParser(
        prog="dof_puzzle",
        description="Score, solve, construct and verify precoding index matrices of (M, N)-channels.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    score = commands.add_parser("score", parents=[common], help="score a precoding index matrix")
    score.add_argument("--spec", required=True, help="channel spec file")
    score.add_argument("--g", required=True, help="precoding index matrix file")
    score.set_defaults(handler=score_command)

    solve = commands.add_parser("solve", parents=[common], help="search for a best precoding index matrix")
    solve.add_argument("--spec", required=True, help="channel spec file")
    solve.add_argument("--mode", choices=["exact", "heuristic", "brute"], default="exact")
    solve.add_argument("--budget", type=positive_float, help="wall-clock budget in seconds")
    solve.add_argument("--seed", type=nonnegative_int, default=DEFAULT_SEED)
    solve.add_argument("--jobs", type=positive_int, default=1)
    solve.add_argument("--max-label", type=positive_int, help="largest label allowed (default: number of messages)")
    solve.add_argument("--out", help="write the best G to this file")
    solve.add_argument("--json", action="store_true", help="print the report as JSON")
    solve.set_defaults(handler=solve_command)

    construct = commands.add_parser("construct", parents=[common], help="closed-form G for the symmetric family")
    construct.add_argument("--K", type=positive_int, required=True)
    construct.add_argument("--m", type=positive_int, required=True)
    construct.add_argument("--variant", choices=["corollary", "classic"], default="corollary")
    construct.add_argument("--out", help="write G to this file")
    construct.set_defaults(handler=construct_command)

    verify = commands.add_parser("verify", parents=[common], help="check the alignment scheme built from G")
    verify.add_argument("--spec", required=True, help="channel spec file")
    verify.add_argument("--g", required=True, help="precoding index matrix file")
    verify.add_argument("--eta", type=positive_int, default=DEFAULT_ETA)
    verify.add_argument("--trials", type=positive_int, default=DEFAULT_TRIALS)
    verify.add_argument("--backend", choices=["exact", "float"], default="exact")
    verify.add_argument("--seed", type=nonnegative_int, default=DEFAULT_SEED)
    verify.add_argument("--json", action="store_true", help="print the report as JSON")
    verify.set_defaults(handler=verify_command)

    sweep = commands.add_parser("sweep", parents=[common], help="corollary vs classic scores for m in 1..K")
    sweep.add_argument("--K", type=positive_int, required=True)
    sweep.add_argument("--out", help="write to this file instead of stdout")
    sweep.add_argument("--format", choices=["csv", "dat"], default="csv")
    sweep.set_defaults(handler=sweep_command)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch to the command handler and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.log_level:
        logging.getLogger().setLevel(getattr(logging, args.log_level))
    logger.debug(f"Running {args.command}")
    try:
        return args.handler(args)
    except Exception as e:
        return error_handler(e)


def main() -> None:
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=getattr(logging, LOG_LEVEL),
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
