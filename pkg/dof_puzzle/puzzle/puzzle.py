import logging
from typing import Dict, List, Sequence, Tuple

from dof_puzzle.errors import InvalidArgumentError, PreconditionError
from dof_puzzle.models import Cell, ChannelSpec, IndexMatrix, RowScore, ScoreValue

logger = logging.getLogger(__name__)

# A violation is ((p, q),) for a label on a cell without a message, or
# ((p1, q), (p2, q)) for two equal positive labels sharing column q.
Violation = Tuple[Cell, ...]


def _check_dimensions(G: IndexMatrix, spec: ChannelSpec) -> None:
    if G.K != spec.K:
        raise InvalidArgumentError(f"G is {G.K}x{G.K} but the channel has K={spec.K}")


def _check_row(p: int, K: int) -> None:
    if not 1 <= p <= K:
        raise InvalidArgumentError(f"row index {p} is outside [1..{K}]")


def validate(G: IndexMatrix, spec: ChannelSpec) -> List[Violation]:
    """Check both puzzle rules and return every violation (empty when valid).

    Rule (i): a positive label only where M is 1.
    Rule (ii): a positive label appears at most once per column.
    """
    _check_dimensions(G, spec)
    violations: List[Violation] = []
    for p, q in G.positive_cells():
        if not spec.message(p, q):
            violations.append(((p, q),))

    for q in range(1, G.K + 1):
        rows_by_label: Dict[int, List[int]] = {}
        for p in range(1, G.K + 1):
            label = G.entry(p, q)
            if label > 0:
                rows_by_label.setdefault(label, []).append(p)
        for label in sorted(rows_by_label):
            rows = rows_by_label[label]
            for i, first in enumerate(rows):
                for second in rows[i + 1:]:
                    violations.append(((first, q), (second, q)))
    return violations


def is_valid(G: IndexMatrix, spec: ChannelSpec) -> bool:
    return not validate(G, spec)


def submatrix(G: IndexMatrix, spec: ChannelSpec, p: int) -> List[List[int]]:
    """G^(p): G without row p and without the columns Rx p does not hear."""
    _check_dimensions(G, spec)
    _check_row(p, spec.K)
    columns = spec.connected(p)
    return [
        [G.entry(r, q) for q in columns]
        for r in range(1, G.K + 1)
        if r != p
    ]


def interference_count(G: IndexMatrix, spec: ChannelSpec, p: int) -> int:
    """g^(p): number of distinct positive labels in G^(p)."""
    return len({value for row in submatrix(G, spec, p) for value in row if value > 0})


def row_breakdown(G: IndexMatrix, spec: ChannelSpec) -> Tuple[RowScore, ...]:
    _check_dimensions(G, spec)
    return tuple(
        RowScore(row_support=G.row_support(p), interference_count=interference_count(G, spec, p))
        for p in range(1, spec.K + 1)
    )


def score(G: IndexMatrix, spec: ChannelSpec) -> ScoreValue:
    """Exact score ||G||_0 / max_p(||G[p,:]||_0 + g^(p)); the all-zero G scores 0.

    Raises:
        PreconditionError: G breaks a puzzle rule
    """
    violations = validate(G, spec)
    if violations:
        raise PreconditionError("cannot score an invalid precoding index matrix", violations)
    per_row = row_breakdown(G, spec)
    numerator = sum(r.row_support for r in per_row)
    denominator = max((r.total for r in per_row), default=0) if numerator else 0
    return ScoreValue(numerator=numerator, denominator=denominator, per_row=per_row)


def canonical_relabel(G: IndexMatrix) -> IndexMatrix:
    """Rename positive labels so they first appear in row-major order as 1, 2, 3, ..."""
    return IndexMatrix(K=G.K, G=relabel_rows(G.G))


# Fast paths over plain 0-based lists, used by the search loops.

def relabel_rows(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    mapping: Dict[int, int] = {}
    relabeled = []
    for row in rows:
        new_row = []
        for value in row:
            if value > 0:
                if value not in mapping:
                    mapping[value] = len(mapping) + 1
                value = mapping[value]
            new_row.append(value)
        relabeled.append(tuple(new_row))
    return tuple(relabeled)


def row_totals(rows: Sequence[Sequence[int]], N: Sequence[Sequence[int]]) -> Tuple[List[int], List[int]]:
    """Per-row (||G[p,:]||_0, g^(p)) for a 0-based list-of-lists G."""
    K = len(rows)
    supports = [sum(1 for v in row if v > 0) for row in rows]
    counts = []
    for p in range(K):
        seen = set()
        for q in range(K):
            if N[p][q]:
                for r in range(K):
                    if r != p and rows[r][q] > 0:
                        seen.add(rows[r][q])
        counts.append(len(seen))
    return supports, counts


def score_parts(rows: Sequence[Sequence[int]], N: Sequence[Sequence[int]]) -> Tuple[int, int]:
    """(numerator, denominator) of the score of a filling assumed valid."""
    supports, counts = row_totals(rows, N)
    numerator = sum(supports)
    if not numerator:
        return 0, 0
    return numerator, max(s + g for s, g in zip(supports, counts))


def column_legal(rows: Sequence[Sequence[int]], p: int, q: int, label: int) -> bool:
    """True if putting label at 0-based (p, q) keeps column q free of repeats."""
    if label == 0:
        return True
    return all(rows[r][q] != label for r in range(len(rows)) if r != p)
