import networkx as nx
import pytest
from hypothesis import given

from utils.decomposition import (
    Decomposition,
    augment_heavy_pairs,
    build_scaffold,
    decompose,
    lca_closure,
    rooted_tree,
)
from utils.exceptions import InvariantViolation
from utils.graph_core import Decision, Instance, MultiGraph, is_tree
from utils.oracle import exact_tds
from utils.reductions import semi_reduce

from strategies import instances


def _semi_reduced(inst):
    result = semi_reduce(inst)
    if result.decided_no or is_tree(result.instance.graph):
        return None
    return result.instance


def test_lca_closure_on_a_star():
    star = nx.star_graph(3)
    tree = rooted_tree(star, [0, 1, 2, 3])
    assert lca_closure(tree, {1, 2}) == {0, 1, 2}
    assert lca_closure(tree, {0, 3}) == {0, 3}
    assert lca_closure(tree, set()) == set()


def test_lca_closure_on_a_path():
    path = nx.path_graph(range(1, 6))
    tree = rooted_tree(path, range(1, 6))
    assert lca_closure(tree, {3, 5}) == {3, 5}
    assert lca_closure(tree, {2, 4}) == {2, 4}


def test_lca_closure_adds_branch_points():
    tree = nx.bfs_tree(nx.Graph([(1, 2), (2, 3), (2, 4), (1, 5), (5, 6), (5, 7)]), 1)
    assert lca_closure(tree, {3, 4, 6, 7}) == {1, 2, 3, 4, 5, 6, 7}


def test_rooted_tree_uses_minimum_root():
    tree = rooted_tree(nx.path_graph([4, 2, 7]), [2, 4, 7])
    assert tree.in_degree(2) == 0


def test_heavy_pair_gets_double_edge():
    # four parallel paths between 1 and 2 through single vertices, budget 1
    edges = [(1, v) for v in range(3, 7)] + [(v, 2) for v in range(3, 7)]
    inst = Instance.build(edges, 1)
    scaffold = build_scaffold(inst)
    assert scaffold is not Decision.NO
    assert scaffold.f == {2}
    assert 1 in scaffold.q_hat
    assert (1, 2) in scaffold.heavy_pairs(1)
    assert augment_heavy_pairs(inst, scaffold).graph.multiplicity(1, 2) == 2


def test_k4_decomposition(k4_instance):
    dec = decompose(k4_instance)
    assert isinstance(dec, Decomposition)
    assert dec.scaffold.f <= dec.c_m
    assert dec.ledger.all_satisfied()
    assert set(dec.c_m | dec.c_g | dec.i_set) == set(dec.instance.graph.vertices())


def test_large_fvs_decides_no():
    # three disjoint triangles joined in a ring need three deletions
    edges = []
    for base in (1, 4, 7):
        edges += [(base, base + 1), (base + 1, base + 2), (base, base + 2)]
    edges += [(3, 4), (6, 7), (9, 1)]
    inst = Instance.build(edges, 1)
    assert exact_tds(inst).decision is Decision.NO
    assert decompose(inst) is Decision.NO


def test_flower_in_input_is_an_invariant_violation(butterfly):
    with pytest.raises(InvariantViolation):
        build_scaffold(Instance(butterfly, {v: 1 for v in butterfly.vertices()}, 1))


def test_single_vertex_passes_through():
    dec = decompose(Instance(MultiGraph(vertices=[1]), {1: 1}, 0))
    assert dec.passthrough
    assert dec.c_m == {1}


@given(instances(max_n=8))
def test_decomposition_bounds_hold(inst):
    reduced = _semi_reduced(inst)
    if reduced is None:
        return
    dec = decompose(reduced)
    if dec is Decision.NO:
        assert not exact_tds(inst).is_yes
        return
    assert dec.ledger.all_satisfied()
    assert dec.instance.k == reduced.k
    assert dec.instance.total_weight() == reduced.total_weight()
    for merged, comp in dec.contraction_map.items():
        assert merged in dec.i_set
        assert not comp & dec.c_g


@given(instances(max_n=8))
def test_decomposition_keeps_the_answer(inst):
    reduced = _semi_reduced(inst)
    if reduced is None:
        return
    dec = decompose(reduced)
    if dec is Decision.NO:
        return
    assert exact_tds(dec.instance).is_yes == exact_tds(reduced).is_yes
