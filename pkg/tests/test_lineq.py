from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utils.lineq import (
    LinearSystem,
    evaluate,
    in_span,
    peel,
    reduce_equations,
    row_basis,
    violations,
)


@st.composite
def systems(draw, max_vars: int = 4, max_rows: int = 8):
    width = draw(st.integers(1, max_vars)) + 1
    rows = draw(st.lists(st.lists(st.integers(-2, 2), min_size=width, max_size=width),
                         min_size=1, max_size=max_rows))
    return LinearSystem(rows)


@st.composite
def vertex_equations(draw, max_vars: int = 6, max_rows: int = 40):
    """0/1 rows with constant -1, the shape neighbourhood equations take"""
    n_vars = draw(st.integers(1, max_vars))
    n_rows = draw(st.integers(1, max_rows))
    row = st.lists(st.integers(0, 1), min_size=n_vars, max_size=n_vars).map(lambda r: r + [-1])
    return LinearSystem(draw(st.lists(row, min_size=n_rows, max_size=n_rows)))


def test_row_basis_skips_dependent_rows():
    assert row_basis([[1, 0, 1], [2, 0, 2], [0, 1, 0], [1, 1, 1]]) == [0, 2]
    assert row_basis([[0, 0], [0, 0]]) == []


def test_row_basis_exact_over_rationals():
    rows = [[3, 1, 0], [1, Fraction(1, 3), 0], [0, 0, 7]]
    assert row_basis(rows) == [0, 2]


def test_in_span():
    assert in_span([[1, 0, 0], [0, 1, 0]], [2, -3, 0])
    assert not in_span([[1, 0, 0], [0, 1, 0]], [0, 0, 1])


def test_peel_takes_disjoint_layers():
    system = LinearSystem([[1, 1, -1]] * 4 + [[1, 0, -1]])
    result = peel(system, 1)
    assert result.layers == [[0, 4], [1]]
    assert result.kept_row_indices == [0, 1, 4]


def test_peel_stops_when_rows_run_out():
    system = LinearSystem([[1, -1], [2, -2]])
    result = peel(system, 5)
    assert result.kept_row_indices == [0, 1]
    assert len(result.layers) == 2


def test_reduce_keeps_tags():
    system = LinearSystem([[1, 0, -1], [1, 0, -1], [0, 1, -1]], tags=["a", "b", "c"])
    reduced = reduce_equations(system, 0)
    assert reduced.tags == ["a", "c"]


def test_evaluate_uses_constant_column():
    assert evaluate([1, 1, -1], [1, 0]) == 0
    assert evaluate([1, 1, -1], [1, 1]) == 1


def test_system_validation():
    with pytest.raises(ValueError):
        LinearSystem([[1, 0], [1]])
    with pytest.raises(ValueError):
        LinearSystem([[1, 0]], tags=["a", "b"])


@given(systems(), st.integers(0, 2))
def test_reduced_size_bound(system, k):
    reduced = reduce_equations(system, k)
    assert len(reduced) <= system.n_columns * (k + 1)
    assert set(reduced.tags) <= set(system.tags)


@settings(max_examples=500)
@given(systems(), st.integers(0, 2))
def test_few_violations_in_subsystem_carry_over(system, k):
    reduced = reduce_equations(system, k)
    for assignment in product((0, 1), repeat=system.n_columns - 1):
        if violations(reduced, assignment) <= k:
            assert violations(system, assignment) == violations(reduced, assignment)


@given(systems())
def test_basis_spans_every_row(system):
    basis = [system.rows[i] for i in row_basis(system.rows)]
    assert all(in_span(basis, row) for row in system.rows)


def test_spanning_examples():
    assert row_basis([[1, 0], [0, 1], [1, 1]]) == [0, 1]
    assert row_basis([[2, 3]] * 5) == [0]
    result = peel(LinearSystem([[1]] * 5), 1)
    assert result.layers == [[0], [1]]


def test_mostly_repeated_equations():
    system = LinearSystem([[1, 0, -1]] * 3 + [[0, 1, -1]])
    reduced = reduce_equations(system, 1)
    assert reduced.tags == [0, 1, 3]
    assert violations(reduced, [1, 0]) == 1
    assert violations(system, [1, 0]) == 1


def test_empty_system():
    assert len(reduce_equations(LinearSystem([]), 2)) == 0


@settings(max_examples=500)
@given(vertex_equations(), st.integers(0, 2))
def test_peeled_neighbourhood_equations(system, k):
    result = peel(system, k)
    reduced = system.subset(result.kept_row_indices)
    dropped = [i for i in range(len(system)) if i not in set(result.kept_row_indices)]
    assert len(reduced) <= system.n_columns * (k + 1)
    if dropped:
        assert len(result.layers) == k + 1

    for assignment in product((0, 1), repeat=system.n_columns - 1):
        kept_bad = violations(reduced, assignment)
        assert violations(system, assignment) >= kept_bad
        if kept_bad > k:
            continue
        assert all(evaluate(system.rows[i], assignment) == 0 for i in dropped)
        assert violations(system, assignment) == kept_bad
        if len(result.layers) == k + 1:
            assert any(all(evaluate(system.rows[i], assignment) == 0 for i in layer)
                       for layer in result.layers)
