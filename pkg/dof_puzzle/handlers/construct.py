import argparse
import logging

from dof_puzzle.constructions import (
    SymmetricFamily,
    classic_G,
    classic_score,
    corollary_G,
    corollary_score,
)
from dof_puzzle.puzzle import score
from dof_puzzle.topology import serialize_index_matrix
from dof_puzzle.utils import format_score, render_matrix, render_table, write_text

from .error import EXIT_FAILURE, EXIT_OK

logger = logging.getLogger(__name__)

VARIANTS = {
    "corollary": (corollary_G, corollary_score),
    "classic": (classic_G, classic_score),
}


def construct_command(args: argparse.Namespace) -> int:
    """Build a closed-form G for the (K, m) family and score it both ways."""
    fam = SymmetricFamily.of(args.K, args.m)
    build, formula = VARIANTS[args.variant]
    G = build(fam)
    expected = formula(fam)
    recomputed = score(G, fam.spec)

    print(f"variant: {args.variant} (K={fam.K}, m={fam.m})")
    print(f"formula score: {format_score(expected.value)}")
    print(f"recomputed score: {format_score(recomputed.value)}")
    print("G:")
    for line in render_matrix(G):
        print(line)
    rows = [
        (p, r.row_support, r.interference_count, r.total)
        for p, r in enumerate(recomputed.per_row, start=1)
    ]
    print(render_table(["p", "row_support", "g", "total"], rows))

    if args.out:
        write_text(args.out, serialize_index_matrix(G))
    if expected.value != recomputed.value:
        logger.error(f"Formula {expected} and recomputed score {recomputed} disagree")
        return EXIT_FAILURE
    return EXIT_OK
