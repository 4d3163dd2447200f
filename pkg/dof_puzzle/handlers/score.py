import argparse
import logging

from dof_puzzle.puzzle import score
from dof_puzzle.topology import parse_index_matrix, parse_spec
from dof_puzzle.utils import format_score, read_text, render_table

from .error import EXIT_OK

logger = logging.getLogger(__name__)


def score_command(args: argparse.Namespace) -> int:
    """Print S and the per-row breakdown of a precoding index matrix."""
    spec = parse_spec(read_text(args.spec))
    G = parse_index_matrix(read_text(args.g))
    value = score(G, spec)

    print(f"score: {format_score(value.value)}")
    rows = [
        (p, r.row_support, r.interference_count, r.total)
        for p, r in enumerate(value.per_row, start=1)
    ]
    print(render_table(["p", "row_support", "g", "total"], rows))
    return EXIT_OK
