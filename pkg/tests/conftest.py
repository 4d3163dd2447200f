from fractions import Fraction

import pytest

from dof_puzzle.models import ChannelSpec, IndexMatrix
from dof_puzzle.topology import symmetric_spec


def spec_from(M, N) -> ChannelSpec:
    return ChannelSpec(K=len(M), M=tuple(map(tuple, M)), N=tuple(map(tuple, N)))


def matrix(rows) -> IndexMatrix:
    return IndexMatrix.from_rows(rows)


# Standard 3-user interference channel
@pytest.fixture
def ic3_spec():
    return spec_from(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 1], [1, 1, 1], [1, 1, 1]],
    )


@pytest.fixture
def ic3_shared_G():
    return matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.fixture
def ic3_distinct_G():
    return matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])


# X-channel with one link less per receiver
@pytest.fixture
def x_minus_one_spec():
    rows = [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]
    return spec_from(rows, rows)


@pytest.fixture
def x_minus_one_optimum():
    """Best score on the four-user channel without direct links, found by brute force."""
    return Fraction(11, 5)


@pytest.fixture
def x_minus_one_dropped_G():
    return matrix([[0, 1, 1, 1], [2, 0, 2, 2], [3, 3, 0, 3], [0, 2, 3, 0]])


@pytest.fixture
def x_minus_one_full_G():
    return matrix([[0, 1, 1, 1], [2, 0, 2, 2], [3, 3, 0, 3], [4, 4, 4, 0]])


# Cyclic family K=5, m=2 with its corollary filling
@pytest.fixture
def k5m2_spec():
    return symmetric_spec(5, 2)


@pytest.fixture
def k5m2_G():
    return matrix([
        [1, 0, 0, 0, 1],
        [2, 2, 0, 0, 0],
        [0, 1, 1, 0, 0],
        [0, 0, 2, 2, 0],
        [0, 0, 0, 1, 0],
    ])


@pytest.fixture
def k6m4_G():
    return matrix([
        [1, 0, 0, 1, 1, 1],
        [2, 2, 0, 0, 2, 2],
        [3, 3, 3, 0, 0, 3],
        [4, 4, 4, 4, 0, 0],
        [0, 1, 2, 3, 0, 0],
        [0, 0, 1, 2, 3, 0],
    ])


@pytest.fixture
def x2_spec():
    ones = [[1, 1], [1, 1]]
    return spec_from(ones, ones)


@pytest.fixture
def write_file(tmp_path):
    """Write text under tmp_path and return the path as a string."""
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
