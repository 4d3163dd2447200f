import logging
from fractions import Fraction
from typing import List, Sequence

from dof_puzzle.errors import InvalidArgumentError
from dof_puzzle.models import IndexMatrix, format_fraction

logger = logging.getLogger(__name__)


def format_score(value: Fraction) -> str:
    """'num/den (decimal)': the fraction is exact, the decimal is for reading."""
    return f"{format_fraction(value)} ({float(value):.6f})"


def render_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Right-aligned plain-text table."""
    cells = [[str(h) for h in headers]] + [[str(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)


def render_matrix(G: IndexMatrix) -> List[str]:
    width = max(len(str(G.max_label)), 1)
    return [" ".join(str(v).rjust(width) for v in row) for row in G.G]


def read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InvalidArgumentError(f"cannot read {path}: {e.strerror}")


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise InvalidArgumentError(f"cannot write {path}: {e.strerror}")
    logger.info(f"Wrote {path}")
