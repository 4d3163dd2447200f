import logging
import random
import time
from multiprocessing import Pool
from typing import List, Optional, Tuple

from dof_puzzle.constructions import classic_labeling
from dof_puzzle.errors import PreconditionError
from dof_puzzle.models import ChannelSpec, IndexMatrix, SolveConfig, SolveReport
from dof_puzzle.puzzle import score, validate
from dof_puzzle.puzzle.puzzle import column_legal, relabel_rows, score_parts

logger = logging.getLogger(__name__)

Rows = List[List[int]]


def _beats(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    """Strictly larger score, 0/0 counting as 0."""
    if a[1] == 0:
        return False
    if b[1] == 0:
        return True
    return a[0] * b[1] > b[0] * a[1]


def _candidates(rows: Rows, p: int, q: int, max_label: int) -> List[int]:
    used = sorted({v for row in rows for v in row if v > 0})
    labels = [0] + [label for label in used if column_legal(rows, p, q, label)]
    fresh = (used[-1] if used else 0) + 1
    if fresh <= max_label:
        labels.append(fresh)
    return [label for label in labels if label != rows[p][q]]


def random_filling(spec: ChannelSpec, rng: random.Random, max_label: int) -> Rows:
    """A uniformly-stepped random valid filling of the M-support in row-major order."""
    K = spec.K
    rows = [[0] * K for _ in range(K)]
    for p, q in spec.support():
        rows[p - 1][q - 1] = rng.choice([0] + _candidates(rows, p - 1, q - 1, max_label))
    return rows


def hill_climb(spec: ChannelSpec, rows: Rows, max_label: int, max_iterations: int,
               deadline: Optional[float] = None) -> Tuple[Rows, Tuple[int, int], int]:
    """Best-improvement single-cell moves, accepting strict gains only.

    Returns:
        (rows, (numerator, denominator), moves evaluated)
    """
    cells = [(p - 1, q - 1) for p, q in spec.support()]
    current = score_parts(rows, spec.N)
    evaluated = 0
    for _ in range(max_iterations):
        if deadline is not None and time.time() > deadline:
            break
        best_move, best_value = None, current
        for p, q in cells:
            old = rows[p][q]
            for label in _candidates(rows, p, q, max_label):
                rows[p][q] = label
                value = score_parts(rows, spec.N)
                evaluated += 1
                if _beats(value, best_value):
                    best_move, best_value = (p, q, label), value
            rows[p][q] = old
        if best_move is None:
            break
        p, q, label = best_move
        rows[p][q] = label
        current = best_value
    return rows, current, evaluated


def _restart(task) -> Tuple[Tuple[int, int], tuple, int]:
    spec, start_rows, seed, max_label, max_iterations, deadline = task
    if start_rows is None:
        start_rows = random_filling(spec, random.Random(seed), max_label)
    rows, value, evaluated = hill_climb(spec, [list(row) for row in start_rows], max_label, max_iterations, deadline)
    return value, relabel_rows(rows), evaluated


def local_search(spec: ChannelSpec, start: IndexMatrix, config: SolveConfig) -> SolveReport:
    """Hill-climb from start, from the classic labeling when it differs, then from random fillings.

    Raises:
        PreconditionError: start is not a valid filling
    """
    violations = validate(start, spec)
    if violations:
        raise PreconditionError("local search needs a valid start", violations)

    begin = time.perf_counter()
    max_label = config.max_label or max(spec.support_size, 1)
    deadline = time.time() + config.time_budget if config.time_budget else None
    seeder = random.Random(config.seed)
    classic = classic_labeling(spec).G

    tasks = [(spec, start.G, None, max_label, config.max_iterations, deadline)]
    for i in range(config.restarts):
        seed = seeder.getrandbits(32)
        start_rows = classic if i == 0 and classic != start.G else None
        tasks.append((spec, start_rows, seed, max_label, config.max_iterations, deadline))
    logger.info(f"Local search with {len(tasks)} starts, max_label={max_label}, jobs={config.parallelism}")

    if config.parallelism == 1:
        results = [_restart(task) for task in tasks]
    else:
        with Pool(config.parallelism) as pool:
            results = pool.map(_restart, tasks)

    best_value, best_key = results[0][0], results[0][1]
    evaluated = 0
    for value, key, count in results:
        evaluated += count
        if _beats(value, best_value) or (not _beats(best_value, value) and key < best_key):
            best_value, best_key = value, key

    if deadline is not None and time.time() > deadline:
        logger.warning(f"Time budget of {config.time_budget}s exhausted during local search")
    best_G = IndexMatrix(K=spec.K, G=best_key)
    elapsed = time.perf_counter() - begin
    report = SolveReport(
        mode="heuristic",
        best_G=best_G,
        best_score=score(best_G, spec),
        optimal=False,
        nodes_explored=evaluated,
        elapsed=elapsed,
    )
    logger.info(f"Local search finished: score {report.best_score}, {evaluated} moves evaluated")
    return report
