import random
from fractions import Fraction

import pytest

from dof_puzzle.errors import InvalidArgumentError, PreconditionError
from dof_puzzle.models import IndexMatrix, RowScore
from dof_puzzle.puzzle import (
    canonical_relabel,
    interference_count,
    is_valid,
    row_breakdown,
    score,
    submatrix,
    validate,
)
from dof_puzzle.puzzle.puzzle import column_legal, relabel_rows, score_parts
from dof_puzzle.solver.local_search import random_filling
from dof_puzzle.topology import enumerate_specs, symmetric_spec
from tests.conftest import matrix, spec_from


def test_validate_accepts_diagonal_fillings(ic3_spec, ic3_shared_G, ic3_distinct_G):
    assert validate(ic3_shared_G, ic3_spec) == []
    assert validate(ic3_distinct_G, ic3_spec) == []


def test_validate_label_without_message(ic3_spec):
    G = matrix([[1, 1, 0], [0, 2, 0], [0, 0, 3]])
    assert validate(G, ic3_spec) == [((1, 2),)]
    assert not is_valid(G, ic3_spec)


def test_validate_repeated_label_in_column(x2_spec):
    G = matrix([[1, 2], [1, 0]])
    assert validate(G, x2_spec) == [((1, 1), (2, 1))]


def test_validate_reports_every_pair(x_minus_one_spec):
    G = matrix([[0, 1, 1, 1], [1, 0, 2, 2], [1, 3, 0, 3], [0, 2, 3, 0]])
    assert validate(G, x_minus_one_spec) == [((2, 1), (3, 1))]

    G = matrix([[0, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]])
    assert validate(G, x_minus_one_spec) == [((2, 1), (3, 1)), ((2, 1), (4, 1)), ((3, 1), (4, 1))]


# A label repeated along a row is allowed
def test_validate_allows_repeats_in_a_row(x2_spec):
    assert is_valid(matrix([[1, 1], [2, 2]]), x2_spec)


def test_validate_dimension_mismatch(ic3_spec):
    with pytest.raises(InvalidArgumentError):
        validate(matrix([[1, 0], [0, 1]]), ic3_spec)


def test_submatrix_drops_row_and_unheard_columns(x_minus_one_spec, x_minus_one_dropped_G):
    assert submatrix(x_minus_one_dropped_G, x_minus_one_spec, 1) == [[0, 2, 2], [3, 0, 3], [2, 3, 0]]
    assert submatrix(x_minus_one_dropped_G, x_minus_one_spec, 4) == [[0, 1, 1], [2, 0, 2], [3, 3, 0]]


@pytest.mark.parametrize("p", [0, 5])
def test_submatrix_row_out_of_range(x_minus_one_spec, x_minus_one_dropped_G, p):
    with pytest.raises(InvalidArgumentError):
        submatrix(x_minus_one_dropped_G, x_minus_one_spec, p)


def test_interference_count(x_minus_one_spec, x_minus_one_dropped_G):
    counts = [interference_count(x_minus_one_dropped_G, x_minus_one_spec, p) for p in range(1, 5)]
    assert counts == [2, 2, 2, 3]


def test_interference_count_ignores_unheard_columns(k5m2_spec, k5m2_G):
    # Rx 1 hears Tx 1 and Tx 5 only
    assert interference_count(k5m2_G, k5m2_spec, 1) == 1
    assert interference_count(k5m2_G, k5m2_spec, 5) == 2


@pytest.mark.parametrize("G_fixture, expected", [
    ("ic3_shared_G", Fraction(3, 2)),
    ("ic3_distinct_G", Fraction(1)),
])
def test_score_interference_channel(request, ic3_spec, G_fixture, expected):
    assert score(request.getfixturevalue(G_fixture), ic3_spec).value == expected


def test_score_dropping_a_message_helps(x_minus_one_spec, x_minus_one_dropped_G, x_minus_one_full_G):
    dropped = score(x_minus_one_dropped_G, x_minus_one_spec)
    full = score(x_minus_one_full_G, x_minus_one_spec)
    assert (dropped.numerator, dropped.denominator) == (11, 5)
    assert (full.numerator, full.denominator) == (12, 6)
    assert dropped.value > full.value


def test_score_symmetric_filling(k5m2_spec, k5m2_G, k6m4_G):
    assert score(k5m2_G, k5m2_spec).value == 3
    value = score(k6m4_G, symmetric_spec(6, 4))
    assert (value.numerator, value.denominator) == (22, 7)
    assert str(value) == "22/7"


def test_score_all_zero(ic3_spec):
    value = score(IndexMatrix.zeros(3), ic3_spec)
    assert (value.numerator, value.denominator) == (0, 0)
    assert value.value == 0
    assert str(value) == "0/1"


def test_score_rejects_invalid_matrix(x2_spec):
    with pytest.raises(PreconditionError) as excinfo:
        score(matrix([[1, 0], [1, 0]]), x2_spec)
    assert excinfo.value.violations == [((1, 1), (2, 1))]


def test_score_keeps_row_breakdown(x_minus_one_spec, x_minus_one_dropped_G):
    value = score(x_minus_one_dropped_G, x_minus_one_spec)
    assert value.per_row == row_breakdown(x_minus_one_dropped_G, x_minus_one_spec)
    assert value.per_row[3] == RowScore(row_support=2, interference_count=3)
    assert [r.total for r in value.per_row] == [5, 5, 5, 5]


def test_score_single_link():
    assert score(matrix([[1]]), spec_from([[1]], [[1]])).value == 1
    assert score(matrix([[7]]), spec_from([[1]], [[0]])).value == 1


def test_canonical_relabel():
    G = matrix([[0, 3, 5], [5, 0, 3], [9, 9, 0]])
    assert canonical_relabel(G) == matrix([[0, 1, 2], [2, 0, 1], [3, 3, 0]])
    assert canonical_relabel(canonical_relabel(G)) == canonical_relabel(G)


# Renaming labels injectively changes neither validity nor score
@pytest.mark.parametrize("renaming", [{1: 4, 2: 3, 3: 2, 4: 1}, {1: 10, 2: 20, 3: 30, 4: 40}])
def test_score_invariant_under_relabeling(k6m4_G, renaming):
    spec = symmetric_spec(6, 4)
    renamed = matrix([[renaming.get(v, 0) for v in row] for row in k6m4_G.G])
    assert is_valid(renamed, spec)
    assert score(renamed, spec) == score(k6m4_G, spec)
    assert canonical_relabel(renamed) == canonical_relabel(k6m4_G)


def test_fast_helpers_agree_with_score(x_minus_one_spec, x_minus_one_dropped_G):
    rows = x_minus_one_dropped_G.as_lists()
    assert score_parts(rows, x_minus_one_spec.N) == (11, 5)
    assert score_parts([[0, 0], [0, 0]], [[1, 1], [1, 1]]) == (0, 0)
    assert relabel_rows([[2, 0], [0, 2]]) == ((1, 0), (0, 1))


def test_column_legal():
    rows = [[1, 0], [0, 0]]
    assert not column_legal(rows, 1, 0, 1)
    assert column_legal(rows, 1, 0, 2)
    assert column_legal(rows, 1, 0, 0)
    assert column_legal(rows, 0, 0, 1)


def test_submatrix_of_the_cyclic_filling(k6m4_G):
    spec = symmetric_spec(6, 4)
    assert submatrix(k6m4_G, spec, 1) == [[2, 0, 2, 2], [3, 0, 0, 3], [4, 4, 0, 0], [0, 3, 0, 0], [0, 2, 3, 0]]
    assert [interference_count(k6m4_G, spec, p) for p in range(1, 7)] == [3, 3, 3, 3, 4, 4]


def test_submatrix_of_isolated_users():
    identity = [[int(p == q) for q in range(3)] for p in range(3)]
    assert submatrix(matrix(identity), spec_from(identity, identity), 1) == [[0], [0]]


@pytest.mark.parametrize("spec", list(enumerate_specs(2)), ids=lambda s: f"M{s.M}N{s.N}")
def test_submatrix_shape(spec):
    rng = random.Random(0)
    for _ in range(5):
        G = IndexMatrix.from_rows(random_filling(spec, rng, 4))
        for p in range(1, spec.K + 1):
            sub = submatrix(G, spec, p)
            assert len(sub) == spec.K - 1
            assert all(len(row) == sum(spec.N[p - 1]) for row in sub)


# Filling one more cell never lowers that row's ||G[p,:]||_0 + g^(p)
@pytest.mark.parametrize("spec", list(enumerate_specs(2)) + [symmetric_spec(3, 2)], ids=lambda s: f"M{s.M}N{s.N}")
def test_adding_an_entry_never_lowers_its_row_total(spec):
    rng = random.Random(1)
    for _ in range(5):
        rows = random_filling(spec, rng, 4)
        before = row_breakdown(IndexMatrix.from_rows(rows), spec)
        for p, q in spec.support():
            if rows[p - 1][q - 1]:
                continue
            for label in range(1, 6):
                if not column_legal(rows, p - 1, q - 1, label):
                    continue
                rows[p - 1][q - 1] = label
                after = row_breakdown(IndexMatrix.from_rows(rows), spec)
                rows[p - 1][q - 1] = 0
                assert after[p - 1].total >= before[p - 1].total + 1
