import logging
import time
from typing import List, Tuple

from dof_puzzle.config.config import BRUTE_FORCE_MAX_CELLS
from dof_puzzle.errors import RefusedError
from dof_puzzle.models import ChannelSpec, IndexMatrix, SolveReport
from dof_puzzle.puzzle import score

logger = logging.getLogger(__name__)


def brute_force(spec: ChannelSpec, max_cells: int = BRUTE_FORCE_MAX_CELLS) -> SolveReport:
    """Score every canonical filling of the M-support and keep the best.

    Cells are filled in row-major order with 0, an earlier label, or the next
    fresh label, skipping labels already in the column. Fillings therefore come
    out canonical and in lexicographic order, and the first maximum found is
    the smallest one.

    Raises:
        RefusedError: the support has more than max_cells cells
    """
    cells = spec.support()
    if len(cells) > max_cells:
        raise RefusedError("support too large for brute force", len(cells), max_cells)

    start = time.perf_counter()
    K = spec.K
    cells0 = [(p - 1, q - 1) for p, q in cells]
    # support cells feeding G^(p)
    feeders: List[List[Tuple[int, int]]] = [
        [(r, q) for r, q in cells0 if r != p and spec.N[p][q]]
        for p in range(K)
    ]
    rows = [[0] * K for _ in range(K)]
    best = {"num": 0, "den": 0, "rows": tuple(tuple(row) for row in rows)}
    leaves = 0

    def evaluate() -> None:
        nonlocal leaves
        leaves += 1
        supports = [sum(1 for v in row if v) for row in rows]
        numerator = sum(supports)
        if not numerator:
            return
        denominator = max(
            supports[p] + len({rows[r][q] for r, q in feeders[p]} - {0})
            for p in range(K)
        )
        if best["num"] == 0 or numerator * best["den"] > best["num"] * denominator:
            best.update(num=numerator, den=denominator, rows=tuple(tuple(row) for row in rows))

    def fill(index: int, max_used: int) -> None:
        if index == len(cells0):
            evaluate()
            return
        p, q = cells0[index]
        column = {rows[r][q] for r in range(K) if r != p}
        for label in range(0, max_used + 2):
            if label and label in column:
                continue
            rows[p][q] = label
            fill(index + 1, max(max_used, label))
        rows[p][q] = 0

    fill(0, 0)
    best_G = IndexMatrix(K=K, G=best["rows"])
    elapsed = time.perf_counter() - start
    logger.info(f"Brute force scored {leaves} fillings of {len(cells0)} cells in {elapsed:.3f}s")
    return SolveReport(
        mode="brute-force",
        best_G=best_G,
        best_score=score(best_G, spec),
        optimal=True,
        nodes_explored=leaves,
        elapsed=elapsed,
    )
