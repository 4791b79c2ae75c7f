import pytest
from hypothesis import given

from utils.exceptions import OracleLimitError
from utils.generators import FAMILIES, GenSpec, enumerate_connected_graphs, generate, generate_one
from utils.graph_core import Decision, Instance, MultiGraph, is_solution
from utils.oracle import exact_cycle_cover, exact_fvs, exact_flower, exact_tds

from strategies import instances


def test_triangle_needs_one_deletion(triangle):
    answer = exact_tds(Instance(triangle, {1: 3, 2: 1, 3: 2}, 1))
    assert answer.is_yes
    assert answer.witness.deleted == {2}
    assert answer.optimum_weight == 1


def test_ties_break_towards_smaller_ids(triangle):
    answer = exact_tds(Instance(triangle, {1: 1, 2: 1, 3: 1}, 1))
    assert answer.witness.deleted == {1}


def test_disconnected_graph():
    inst = Instance.build([(1, 2)], 1, vertices=[3])
    assert exact_tds(inst).witness.deleted == {3}
    assert exact_tds(inst.without([], k=0)).decision is Decision.NO


def test_negative_budget_is_no(triangle):
    assert exact_tds(Instance(triangle, {1: 1, 2: 1, 3: 1}, -1)).decision is Decision.NO


def test_limit_is_enforced(k4_instance):
    with pytest.raises(OracleLimitError):
        exact_tds(k4_instance, limit=3)


def test_small_oracles(butterfly, k4):
    assert exact_fvs(butterfly) == 1
    assert exact_fvs(k4) == 2
    assert exact_flower(butterfly, 1) == 2
    assert exact_cycle_cover(butterfly, 1) == 2
    assert exact_cycle_cover(k4, 1) == 2


@given(instances(max_n=7))
def test_witness_is_a_solution(inst):
    answer = exact_tds(inst)
    if answer.is_yes:
        assert is_solution(inst, answer.witness.deleted)
        assert answer.witness.weight(inst) == answer.optimum_weight


@pytest.mark.parametrize("family", FAMILIES)
def test_generation_is_deterministic(family):
    spec = GenSpec(family=family, n_max=8, seed=3)
    first = [g.instance.graph.edges() for g in generate(spec, 5)]
    second = [generate_one(spec, i).instance.graph.edges() for i in range(5)]
    assert first == second


@pytest.mark.parametrize("seed", range(5))
def test_planted_solution_is_feasible(seed):
    for generated in generate(GenSpec(family="planted", n_max=9, seed=seed), 10):
        inst = generated.instance
        assert generated.planted_weight == inst.k
        assert is_solution(inst, generated.planted)
        assert exact_tds(inst).optimum_weight <= generated.planted_weight


def test_tree_family_is_always_yes():
    for generated in generate(GenSpec(family="tree", n_max=9), 10):
        assert exact_tds(generated.instance).optimum_weight == 0


def test_bad_family_rejected():
    with pytest.raises(ValueError):
        GenSpec(family="clique")


def test_atlas_counts():
    # connected graphs up to isomorphism on 1..5 vertices
    assert [len(list(enumerate_connected_graphs(n))) for n in range(1, 6)] == [1, 1, 2, 6, 21]
    assert all(isinstance(g, MultiGraph) for g in enumerate_connected_graphs(4))


def test_k4_budgets(k4):
    weights = {v: 1 for v in k4.vertices()}
    assert exact_tds(Instance(k4, weights, 1)).decision is Decision.NO
    assert exact_tds(Instance(k4, weights, 2)).is_yes


def test_double_edge_with_pendant():
    inst = Instance.build([(1, 2, 2), (3, 1)], 1)
    assert exact_tds(inst).witness.deleted == {2}


def test_no_edges_means_forests():
    for generated in generate(GenSpec(family="random", edge_p=0.0, n_max=6), 10):
        assert generated.instance.graph.edge_count() == 0
