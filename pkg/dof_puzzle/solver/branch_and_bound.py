"""Exact branch-and-bound search over canonical precoding index matrices."""
import logging
import time
from multiprocessing import Array, Pool
from typing import List, Optional, Tuple

from dof_puzzle.config.config import TIME_CHECK_INTERVAL
from dof_puzzle.models import ChannelSpec, IndexMatrix, SolveConfig, SolveReport
from dof_puzzle.puzzle import score
from dof_puzzle.puzzle.puzzle import relabel_rows

logger = logging.getLogger(__name__)

# Shared incumbent (numerator, denominator) handed to pool workers by the initializer
_SHARED = None

Key = Tuple[Tuple[int, ...], ...]


def branching_order(spec: ChannelSpec) -> List[Tuple[int, int]]:
    """0-based support cells, column by column; rows by decreasing N-row-sum, then index."""
    row_weight = [sum(row) for row in spec.N]
    order = []
    for q in range(spec.K):
        rows = [p for p in range(spec.K) if spec.M[p][q]]
        rows.sort(key=lambda p: (-row_weight[p], p))
        order.extend((p, q) for p in rows)
    return order


def _better(num: int, den: int, best_num: int, best_den: int) -> int:
    """Compare num/den with best_num/best_den (0/0 reads as 0): 1, 0 or -1."""
    left = num * (best_den or 1) if den else 0
    right = best_num * (den or 1) if best_den else 0
    return (left > right) - (left < right)


class BranchAndBound:
    """Depth-first search with an admissible score bound and strict pruning.

    Labels are canonical in branching order: a cell takes 0, an earlier label
    legal in its column, or the next fresh label. Every optimum survives
    pruning, so ties resolve to the smallest row-major canonical G.
    """

    def __init__(self, spec: ChannelSpec, max_label: int, deadline: Optional[float] = None, shared=None):
        K = spec.K
        self.K = K
        self.cells = branching_order(spec)
        self.max_label = max_label
        self.deadline = deadline
        self.shared = shared

        self.rows = [[0] * K for _ in range(K)]
        self.support = [0] * K
        self.interference = [0] * K
        self.remaining = [sum(row) for row in spec.M]
        self.label_counts = [dict() for _ in range(K)]
        self.column_labels = [set() for _ in range(K)]
        # receivers whose G^(p) contains cell (r, q)
        self.listeners = [
            [[p for p in range(K) if p != r and spec.N[p][q]] for q in range(K)]
            for r in range(K)
        ]

        self.best_num = 0
        self.best_den = 0
        self.best_key: Key = relabel_rows(self.rows)
        self.nodes = 0
        self.exhausted = False

    def _assign(self, p: int, q: int, label: int) -> None:
        self.remaining[p] -= 1
        if label == 0:
            return
        self.rows[p][q] = label
        self.support[p] += 1
        self.column_labels[q].add(label)
        for listener in self.listeners[p][q]:
            counts = self.label_counts[listener]
            counts[label] = counts.get(label, 0) + 1
            if counts[label] == 1:
                self.interference[listener] += 1

    def _unassign(self, p: int, q: int, label: int) -> None:
        self.remaining[p] += 1
        if label == 0:
            return
        self.rows[p][q] = 0
        self.support[p] -= 1
        self.column_labels[q].discard(label)
        for listener in self.listeners[p][q]:
            counts = self.label_counts[listener]
            counts[label] -= 1
            if counts[label] == 0:
                del counts[label]
                self.interference[listener] -= 1

    def _domain(self, q: int, max_used: int) -> List[int]:
        labels = [label for label in range(1, max_used + 1) if label not in self.column_labels[q]]
        if max_used < self.max_label:
            labels.append(max_used + 1)
        labels.append(0)
        return labels

    def _incumbent(self) -> Tuple[int, int]:
        num, den = self.best_num, self.best_den
        if self.shared is not None:
            shared_num, shared_den = self.shared[0], self.shared[1]
            if _better(shared_num, shared_den, num, den) > 0:
                return shared_num, shared_den
        return num, den

    def _prunable(self) -> bool:
        inc_num, inc_den = self._incumbent()
        if inc_num == 0:
            return False
        caps = [s + r for s, r in zip(self.support, self.remaining)]
        low = max(max(s + g for s, g in zip(self.support, self.interference)), 1)
        high = max(low, max(c + g for c, g in zip(caps, self.interference)))
        for D in range(low, high + 1):
            optimistic = sum(min(c, D - g) for c, g in zip(caps, self.interference))
            if optimistic * inc_den >= inc_num * D:
                return False
        return True

    def _publish(self) -> None:
        if self.shared is None:
            return
        with self.shared.get_lock():
            if _better(self.best_num, self.best_den, self.shared[0], self.shared[1]) > 0:
                self.shared[0] = self.best_num
                self.shared[1] = self.best_den

    def _record_leaf(self) -> None:
        num = sum(self.support)
        den = max(s + g for s, g in zip(self.support, self.interference)) if num else 0
        verdict = _better(num, den, self.best_num, self.best_den)
        if verdict < 0:
            return
        key = relabel_rows(self.rows)
        if verdict > 0:
            logger.debug(f"Incumbent improved to {num}/{den}")
            self.best_num, self.best_den, self.best_key = num, den, key
            self._publish()
        elif key < self.best_key:
            self.best_key = key

    def _dfs(self, index: int, max_used: int) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % TIME_CHECK_INTERVAL == 0 and time.time() > self.deadline:
            self.exhausted = True
        if self.exhausted:
            return
        if index == len(self.cells):
            self._record_leaf()
            return
        if self._prunable():
            return
        p, q = self.cells[index]
        for label in self._domain(q, max_used):
            self._assign(p, q, label)
            self._dfs(index + 1, max(max_used, label))
            self._unassign(p, q, label)
            if self.exhausted:
                return

    def prefixes(self, depth: int) -> List[Tuple[int, ...]]:
        """Every canonical, column-legal labeling of the first depth cells."""
        found: List[Tuple[int, ...]] = []

        def walk(index: int, max_used: int, prefix: List[int]) -> None:
            if index == depth:
                found.append(tuple(prefix))
                return
            p, q = self.cells[index]
            for label in self._domain(q, max_used):
                self._assign(p, q, label)
                prefix.append(label)
                walk(index + 1, max(max_used, label), prefix)
                prefix.pop()
                self._unassign(p, q, label)

        walk(0, 0, [])
        return found

    def run(self, prefix: Tuple[int, ...] = ()) -> None:
        for (p, q), label in zip(self.cells, prefix):
            self._assign(p, q, label)
        self._dfs(len(prefix), max(prefix, default=0))
        for (p, q), label in reversed(list(zip(self.cells, prefix))):
            self._unassign(p, q, label)


def _init_worker(shared) -> None:
    global _SHARED
    _SHARED = shared


def _run_prefix(task) -> Tuple[int, int, Key, int, bool]:
    spec, max_label, deadline, prefix = task
    search = BranchAndBound(spec, max_label, deadline, _SHARED)
    search.run(prefix)
    return search.best_num, search.best_den, search.best_key, search.nodes, search.exhausted


def _split_depth(search: BranchAndBound, parallelism: int) -> Tuple[int, List[Tuple[int, ...]]]:
    depth, prefixes = 0, [()]
    while depth < len(search.cells) and len(prefixes) < 4 * parallelism:
        depth += 1
        prefixes = search.prefixes(depth)
    return depth, prefixes


def branch_and_bound(spec: ChannelSpec, config: SolveConfig) -> SolveReport:
    """Exact search. optimal is set only when the search completed and the label bound was not binding."""
    start = time.perf_counter()
    support_size = spec.support_size
    max_label = config.max_label or max(support_size, 1)
    deadline = time.time() + config.time_budget if config.time_budget else None
    logger.info(f"Exact search on K={spec.K} with {support_size} cells, max_label={max_label}, jobs={config.parallelism}")

    if config.parallelism == 1:
        search = BranchAndBound(spec, max_label, deadline)
        search.run()
        results = [(search.best_num, search.best_den, search.best_key, search.nodes, search.exhausted)]
    else:
        _, prefixes = _split_depth(BranchAndBound(spec, max_label), config.parallelism)
        shared = Array('q', [0, 0])
        tasks = [(spec, max_label, deadline, prefix) for prefix in prefixes]
        with Pool(config.parallelism, initializer=_init_worker, initargs=(shared,)) as pool:
            results = pool.map(_run_prefix, tasks)

    best_num, best_den, best_key = 0, 0, None
    nodes, exhausted = 0, False
    for num, den, key, task_nodes, task_exhausted in results:
        nodes += task_nodes
        exhausted = exhausted or task_exhausted
        verdict = _better(num, den, best_num, best_den)
        if best_key is None or verdict > 0 or (verdict == 0 and key < best_key):
            best_num, best_den, best_key = num, den, key

    if exhausted:
        logger.warning(f"Time budget of {config.time_budget}s exhausted after {nodes} nodes")
    best_G = IndexMatrix(K=spec.K, G=best_key)
    optimal = not exhausted and (config.max_label is None or config.max_label >= support_size)
    elapsed = time.perf_counter() - start
    report = SolveReport(
        mode="exact",
        best_G=best_G,
        best_score=score(best_G, spec),
        optimal=optimal,
        nodes_explored=nodes,
        elapsed=elapsed,
    )
    logger.info(f"Exact search finished: score {report.best_score}, {nodes} nodes, {elapsed:.3f}s")
    return report
