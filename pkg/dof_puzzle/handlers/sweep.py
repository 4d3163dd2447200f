import argparse
import io
import logging

from dof_puzzle.constructions import dominance_check, write_dominance_csv
from dof_puzzle.utils import write_text

from .error import EXIT_OK

logger = logging.getLogger(__name__)


def _dat(rows) -> str:
    """Two gnuplot blocks of 'm value' lines: corollary, then classic."""
    lines = []
    for name, pick in (("corollary", lambda r: r.corollary), ("classic", lambda r: r.classic)):
        lines.append(f"# {name}")
        lines.extend(f"{r.m} {float(pick(r)):.6f}" for r in rows)
        lines.extend(["", ""])
    return "\n".join(lines[:-1])


def sweep_command(args: argparse.Namespace) -> int:
    """Compare the corollary and classic scores for every m in 1..K."""
    rows = dominance_check([args.K])
    if args.format == "dat":
        text = _dat(rows)
    else:
        buffer = io.StringIO()
        write_dominance_csv(rows, buffer)
        text = buffer.getvalue()

    if args.out:
        write_text(args.out, text)
    else:
        print(text, end="")
    return EXIT_OK
