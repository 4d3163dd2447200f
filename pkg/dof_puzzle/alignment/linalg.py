"""Rank of the receiver matrices, exactly over the rationals or by SVD threshold."""
import logging
from fractions import Fraction
from math import lcm
from typing import List, Sequence

import numpy as np

from dof_puzzle.config.config import RANK_PRIME

logger = logging.getLogger(__name__)


def integer_columns(matrix: np.ndarray) -> List[List[int]]:
    """Scale every column of a Fraction matrix to integers; column scaling keeps the rank."""
    columns = []
    for j in range(matrix.shape[1]):
        values = [Fraction(v) for v in matrix[:, j]]
        scale = lcm(*(v.denominator for v in values)) if values else 1
        columns.append([int(v * scale) for v in values])
    return columns


def rank_mod_prime(vectors: Sequence[Sequence[int]], prime: int = RANK_PRIME) -> int:
    """Rank of the integer vectors reduced modulo prime; never above the rational rank."""
    rows = [[v % prime for v in vector] for vector in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = pow(rows[rank][col], prime - 2, prime)
        pivot_row = [v * inverse % prime for v in rows[rank]]
        rows[rank] = pivot_row
        for r in range(rank + 1, len(rows)):
            factor = rows[r][col]
            if factor:
                rows[r] = [(a - factor * b) % prime for a, b in zip(rows[r], pivot_row)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def bareiss_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Fraction-free elimination; every division is exact."""
    a = [list(vector) for vector in vectors]
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    rank, previous = 0, 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                a[r][c] = (a[r][c] * a[rank][col] - a[r][col] * a[rank][c]) // previous
            a[r][col] = 0
        previous = a[rank][col]
        rank += 1
        if rank == n_rows:
            break
    return rank


def exact_rank(matrix: np.ndarray) -> int:
    """Rank of a matrix of Fractions.

    Full rank modulo a large prime already proves full rank over Q; only a
    deficient modular rank pays for the Bareiss elimination.
    """
    if matrix.size == 0:
        return 0
    columns = integer_columns(matrix)
    full = min(matrix.shape)
    modular = rank_mod_prime(columns)
    if modular == full:
        return modular
    logger.debug(f"Modular rank {modular} < {full}, confirming with Bareiss elimination")
    return bareiss_rank(columns)


def float_rank(matrix: np.ndarray) -> int:
    """SVD rank with numpy's default threshold, max(shape) * eps * largest singular value."""
    if matrix.size == 0:
        return 0
    return int(np.linalg.matrix_rank(np.asarray(matrix, dtype=float)))
