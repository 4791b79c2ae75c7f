"""
Decomposition - Splits a semi-reduced instance into a small core C_m, a forest
part C_g and an independent set I of contracted components
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Set, Tuple, Union

import networkx as nx

from utils.exceptions import InvariantViolation
from utils.flower import flower_or_cover
from utils.fvs_approx import approx_fvs
from utils.graph_core import (
    Decision,
    Instance,
    VertexId,
    connected_components,
    contract_component,
    delete_vertices,
    induced_subgraph,
    is_forest,
)
from utils.ledger import BoundLedger

logger = logging.getLogger(__name__)

Pair = Tuple[VertexId, VertexId]
Component = FrozenSet[VertexId]


def lca_closure(tree: nx.DiGraph, m) -> Set[VertexId]:
    """Close `m` under pairwise lowest common ancestors in a rooted tree"""
    closure = set(m)
    changed = True
    while changed:
        changed = False
        for u, v in combinations(sorted(closure), 2):
            ancestor = nx.lowest_common_ancestor(tree, u, v)
            if ancestor not in closure:
                closure.add(ancestor)
                changed = True
                break

    if len(closure) > 2 * len(m):
        raise InvariantViolation("LCA closure size", len(closure), 2 * len(m))
    rest = tree.to_undirected(as_view=True).subgraph(set(tree.nodes()) - closure)
    for comp in nx.connected_components(rest):
        touching = {u for v in comp for u in nx.all_neighbors(tree, v) if u in closure}
        if len(touching) > 2:
            raise InvariantViolation("closure neighbours of a residual tree component", len(touching), 2)
    return closure


def rooted_tree(simple: nx.Graph, vertices) -> nx.DiGraph:
    """Orient a tree away from its minimum vertex"""
    root = min(vertices)
    return nx.bfs_tree(simple.subgraph(vertices), root)


@dataclass
class PairStat:
    components: List[Component] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.components)


@dataclass
class Scaffold:
    f: FrozenSet[VertexId]
    q: FrozenSet[VertexId]
    q_hat: FrozenSet[VertexId]
    c_m: FrozenSet[VertexId]
    covers: Dict[VertexId, FrozenSet[VertexId]]
    components: List[Component]
    classification: Dict[Component, int]
    pair_stats: Dict[Pair, PairStat]
    r_heavy: Dict[VertexId, FrozenSet[VertexId]]
    ledger: BoundLedger

    def light_pairs(self, k: int) -> List[Pair]:
        return [p for p, s in sorted(self.pair_stats.items()) if 1 <= s.count <= k + 1]

    def heavy_pairs(self, k: int) -> List[Pair]:
        return [p for p, s in sorted(self.pair_stats.items()) if s.count >= k + 2]

    def of_class(self, label: int) -> List[Component]:
        return [c for c in self.components if self.classification[c] == label]


@dataclass
class Decomposition:
    instance: Instance
    c_m: FrozenSet[VertexId]
    c_g: FrozenSet[VertexId]
    i_set: FrozenSet[VertexId]
    augmented_pairs: FrozenSet[Pair]
    contraction_map: Dict[VertexId, Component]
    ledger: BoundLedger
    scaffold: Union[Scaffold, None] = None
    passthrough: bool = False

    def sizes(self) -> Dict[str, int]:
        return {"c_m": len(self.c_m), "c_g": len(self.c_g), "i": len(self.i_set)}


def _pair(u: VertexId, v: VertexId) -> Pair:
    return (u, v) if u < v else (v, u)


def build_scaffold(inst: Instance) -> Union[Scaffold, Decision]:
    g, k = inst.graph, inst.k
    ledger = BoundLedger()

    f = approx_fvs(g).fvs
    if len(f) > 2 * k:
        logger.info(f"Approximate FVS has {len(f)} > 2k = {2 * k} vertices, answer is NO")
        return Decision.NO
    ledger.check("|F| <= 2k", len(f), 2 * k)

    covers: Dict[VertexId, FrozenSet[VertexId]] = {}
    for x in sorted(f):
        answer = flower_or_cover(g, x, k)
        if answer.is_flower:
            raise InvariantViolation(f"flower of order {k + 1} at {x} in a semi-reduced instance")
        covers[x] = answer.cover
        ledger.check(f"|Q^{x}| <= 2k", len(answer.cover), 2 * k)
    q = frozenset(v for cover in covers.values() for v in cover)
    ledger.check("|Q| <= 4k^2", len(q), 4 * k * k)

    forest = delete_vertices(g, f)
    simple = forest.simple_view()
    q_hat: Set[VertexId] = set()
    for tree_vertices in connected_components(forest):
        marked = q & tree_vertices
        closure = lca_closure(rooted_tree(simple, tree_vertices), marked)
        ledger.check(f"|Q-hat in tree {min(tree_vertices)}| <= 2|Q in tree|", len(closure), 2 * len(marked))
        q_hat |= closure
    q_hat = frozenset(q_hat)
    ledger.check("|Q-hat| <= 8k^2", len(q_hat), 8 * k * k)
    ledger.require("Q-hat and F are disjoint", not (q_hat & f))

    c_m = frozenset(q_hat | f)
    ledger.check("|C_m| <= 8k^2+2k", len(c_m), 8 * k * k + 2 * k)

    components = [frozenset(c) for c in connected_components(delete_vertices(g, c_m))]
    owner = {v: c for c in components for v in c}

    worst = 0
    for y in sorted(c_m):
        into: Dict[Component, int] = {}
        for u in g.neighbors(y):
            if u in owner:
                into[owner[u]] = into.get(owner[u], 0) + g.multiplicity(y, u)
        worst = max([worst] + list(into.values()))
    ledger.check("edges from a C_m vertex into one component <= 1", worst, 1)
    ledger.check("largest component of G - C_m <= 8k+8",
                 max((len(c) for c in components), default=0), 8 * k + 8)

    boundary: Dict[Component, FrozenSet[VertexId]] = {}
    classification: Dict[Component, int] = {}
    for comp in components:
        boundary[comp] = frozenset(u for v in comp for u in g.neighbors(v) if u not in comp)
        classification[comp] = len(boundary[comp] & q_hat)
    ledger.check("Q-hat neighbours per component <= 2", max(classification.values(), default=0), 2)

    c2 = [c for c in components if classification[c] == 2]
    ledger.check("|C_2| <= |Q-hat|-1", len(c2), max(len(q_hat) - 1, 0))
    ledger.check("|C_2| <= 8k^2-1", len(c2), max(8 * k * k - 1, 0))

    pair_stats: Dict[Pair, PairStat] = {}
    for y, z in combinations(sorted(c_m), 2):
        if not (y in q_hat and z in q_hat):
            pair_stats[(y, z)] = PairStat()
    for comp in components:
        if classification[comp] == 2:
            continue
        for y, z in combinations(sorted(boundary[comp]), 2):
            pair_stats[(y, z)].components.append(comp)

    r_heavy: Dict[VertexId, FrozenSet[VertexId]] = {}
    for x in sorted(f):
        chosen = set()
        for y in sorted(q_hat):
            stat = pair_stats[_pair(x, y)]
            if stat.count <= k + 1 and sum(1 for c in stat.components if classification[c] == 1) >= 2:
                chosen.add(y)
        r_heavy[x] = frozenset(chosen)
        ledger.check(f"|R_{x}^(>=2)| <= k", len(chosen), k)

    scaffold = Scaffold(f, q, q_hat, c_m, covers, components, classification,
                        pair_stats, r_heavy, ledger)
    _check_light_families(scaffold, k)
    logger.info(f"Scaffold: |F|={len(f)}, |Q|={len(q)}, |Q-hat|={len(q_hat)}, "
                f"{len(components)} residual components ({len(c2)} in C_2)")
    return scaffold


def _check_light_families(scaffold: Scaffold, k: int) -> None:
    ledger = scaffold.ledger
    s1: Set[Component] = set()
    s2: Set[Component] = set()
    for y, z in scaffold.light_pairs(k):
        target = s1 if y in scaffold.f and z in scaffold.f else s2
        target.update(scaffold.pair_stats[(y, z)].components)
    ledger.check("|S_1| <= 2k^3+k^2-k", len(s1), 2 * k ** 3 + k * k - k)
    ledger.check("|S_2| <= 18k^3+2k^2", len(s2), 18 * k ** 3 + 2 * k * k)
    union = s1 | s2
    ledger.check("|union of S| <= 160k^4+184k^3+16k^2-8k",
                 sum(len(c) for c in union), 160 * k ** 4 + 184 * k ** 3 + 16 * k * k - 8 * k)
    ledger.check("|union of C_2| <= 64k^3+64k^2-8k-8",
                 sum(len(c) for c in scaffold.of_class(2)), max(64 * k ** 3 + 64 * k * k - 8 * k - 8, 0))


def augment_heavy_pairs(inst: Instance, scaffold: Scaffold) -> Instance:
    """Add a double edge for every pair shared by at least k+2 components"""
    out = inst.copy()
    for y, z in scaffold.heavy_pairs(inst.k):
        out.graph.set_double(y, z)
    return out


def _passthrough(inst: Instance, disconnected: bool) -> Decomposition:
    ledger = BoundLedger()
    vertices = frozenset(inst.graph.vertices())
    if disconnected:
        ledger.check("disconnected semi-reduced instance has |V| <= 2k", inst.n, 2 * inst.k)
    return Decomposition(inst, vertices, frozenset(), frozenset(), frozenset(), {}, ledger,
                         passthrough=True)


def decompose(inst: Instance) -> Union[Decomposition, Decision]:
    k = inst.k
    disconnected = len(connected_components(inst.graph)) > 1
    if inst.n <= 1 or disconnected:
        logger.info(f"Decomposition skipped for n={inst.n}")
        return _passthrough(inst, disconnected)

    scaffold = build_scaffold(inst)
    if scaffold is Decision.NO:
        return Decision.NO
    if not scaffold.c_m:
        return _passthrough(inst, False)
    ledger = scaffold.ledger

    augmented = augment_heavy_pairs(inst, scaffold)
    heavy = frozenset(scaffold.heavy_pairs(k))

    chosen: Set[Component] = set(scaffold.of_class(2))
    for pair in scaffold.light_pairs(k):
        chosen.update(scaffold.pair_stats[pair].components)
    c_g = frozenset(v for comp in chosen for v in comp)

    graph, weight = augmented.graph, dict(augmented.weight)
    contraction_map: Dict[VertexId, Component] = {}
    for comp in scaffold.components:
        if comp in chosen:
            continue
        graph, merged, total = contract_component(graph, comp, weight)
        for v in comp:
            del weight[v]
        weight[merged] = total
        contraction_map[merged] = comp
    result = Instance(graph, weight, k)
    i_set = frozenset(contraction_map)

    dec = Decomposition(result, scaffold.c_m, c_g, i_set, heavy, contraction_map, ledger, scaffold)
    _check_decomposition(dec, inst)
    logger.info(f"Decomposition: |C_m|={len(dec.c_m)}, |C_g|={len(c_g)}, |I|={len(i_set)}, "
                f"{len(heavy)} double edges added")
    return dec


def _check_decomposition(dec: Decomposition, original: Instance) -> None:
    ledger, k, g = dec.ledger, dec.instance.k, dec.instance.graph
    vertices = set(g.vertices())
    parts = (dec.c_m, dec.c_g, dec.i_set)
    ledger.require("C_m, C_g, I partition V(G')",
                   sum(len(p) for p in parts) == len(vertices) and set().union(*parts) == vertices)
    ledger.check("|C_m| <= 8k^2+2k", len(dec.c_m), 8 * k * k + 2 * k)
    ledger.check("|C_g| <= 160k^4+248k^3+80k^2-16k-8", len(dec.c_g),
                 max(160 * k ** 4 + 248 * k ** 3 + 80 * k * k - 16 * k - 8, 0))
    ledger.require("C_g induces a forest", is_forest(induced_subgraph(g, dec.c_g)))

    for comp in connected_components(induced_subgraph(g, dec.c_g)):
        crossing = sum(g.multiplicity(v, u) for v in comp for u in g.neighbors(v) if u in dec.c_m)
        ledger.check(f"edges from C_g component {min(comp)} into C_m <= 2k+2", crossing, 2 * k + 2)

    widest = 0
    for v in sorted(dec.i_set):
        nbrs = g.neighbors(v)
        ledger.require(f"I-vertex {v} has neighbours only in C_m", set(nbrs) <= dec.c_m)
        ledger.require(f"I-vertex {v} has a neighbour", bool(nbrs))
        ledger.require(f"neighbourhood of I-vertex {v} is a double clique",
                       all(g.multiplicity(a, b) == 2 for a, b in combinations(nbrs, 2)))
        widest = max(widest, len(nbrs))
        expected = original.weight_of(dec.contraction_map[v])
        ledger.require(f"I-vertex {v} carries its component weight", dec.instance.weight[v] == expected)
    ledger.check("|N(v)| <= 2k+1 for v in I", widest, 2 * k + 1)
    ledger.require("I is independent",
                   not any(g.multiplicity(a, b) for a, b in combinations(sorted(dec.i_set), 2)))
    ledger.require("total weight conserved by contraction",
                   dec.instance.total_weight() == original.total_weight())
    ledger.require("budget unchanged by decomposition", dec.instance.k == original.k)
