import argparse
import json
import logging

from dof_puzzle.models import SolveConfig
from dof_puzzle.solver import solve
from dof_puzzle.topology import parse_spec, serialize_index_matrix
from dof_puzzle.utils import format_score, read_text, render_matrix, write_text

from .error import EXIT_OK

logger = logging.getLogger(__name__)

MODES = {"exact": "exact", "heuristic": "heuristic", "brute": "brute-force"}


def solve_command(args: argparse.Namespace) -> int:
    """Search for a best filling, print the report and write G."""
    spec = parse_spec(read_text(args.spec))
    config = SolveConfig(
        mode=MODES[args.mode],
        max_label=args.max_label,
        time_budget=args.budget,
        seed=args.seed,
        parallelism=args.jobs,
    )
    report = solve(spec, config)

    if args.json:
        print(json.dumps(report.to_document(args.timings), indent=2))
    else:
        print(f"mode: {report.mode}")
        print(f"score: {format_score(report.best_score.value)}")
        print(f"optimal: {str(report.optimal).lower()}")
        print(f"nodes_explored: {report.nodes_explored}")
        if args.timings:
            print(f"elapsed: {report.elapsed:.6f}")
        print("G:")
        for line in render_matrix(report.best_G):
            print(line)

    if args.out:
        write_text(args.out, serialize_index_matrix(report.best_G))
    return EXIT_OK
