import pytest
from hypothesis import given, settings

from utils.fvs_approx import approx_fvs
from utils.generators import enumerate_connected_graphs
from utils.graph_core import MultiGraph, delete_vertices, is_forest
from utils.oracle import exact_fvs

from strategies import multigraphs


def test_forest_needs_nothing():
    assert len(approx_fvs(MultiGraph(edges=[(1, 2), (2, 3), (2, 4)]))) == 0


def test_double_edge_is_a_cycle():
    fvs = approx_fvs(MultiGraph(edges=[(1, 2, 2), (2, 3)])).fvs
    assert len(fvs) == 1 and fvs <= {1, 2}


def test_butterfly_centre(butterfly):
    assert approx_fvs(butterfly).fvs == {1}


def test_k4(k4):
    assert len(approx_fvs(k4)) == 2


@settings(max_examples=200)
@given(multigraphs(max_n=9))
def test_two_approximation(g):
    result = approx_fvs(g)
    assert is_forest(delete_vertices(g, result.fvs))
    assert len(result) <= 2 * exact_fvs(g)


@given(multigraphs(max_n=9))
def test_result_is_minimal(g):
    fvs = approx_fvs(g).fvs
    for v in fvs:
        assert not is_forest(delete_vertices(g, fvs - {v}))


def test_cycle_and_disjoint_triangles():
    c5 = MultiGraph(edges=[(i, i % 5 + 1) for i in range(1, 6)])
    assert 1 <= len(approx_fvs(c5)) <= 2
    triangles = MultiGraph(edges=[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert 2 <= len(approx_fvs(triangles)) <= 4


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 8))
def test_two_approximation_on_atlas(n):
    for g in enumerate_connected_graphs(n):
        fvs = approx_fvs(g).fvs
        assert is_forest(delete_vertices(g, fvs))
        assert len(fvs) <= 2 * exact_fvs(g)
