"""
Instance Generators - Deterministic random wTDS instance families
"""

import logging
import random
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Tuple

import networkx as nx

from utils.graph_core import Instance, MultiGraph, VertexId

logger = logging.getLogger(__name__)

FAMILIES = ("random", "planted", "theta", "double", "butterfly", "tree")


@dataclass(frozen=True)
class GenSpec:
    family: str = "random"
    n_min: int = 4
    n_max: int = 10
    edge_p: float = 0.3
    double_p: float = 0.1
    w_max: int = 3
    k_min: int = 0
    k_max: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"bad vertex range [{self.n_min}, {self.n_max}]")
        if self.k_min > self.k_max or self.w_max < 1:
            raise ValueError("bad budget or weight range")


@dataclass
class GeneratedInstance:
    index: int
    family: str
    instance: Instance
    planted: Optional[frozenset] = None
    planted_weight: Optional[int] = None


def _rng(spec: GenSpec, index: int) -> random.Random:
    return random.Random(spec.seed * 1_000_003 + index * 7919 + FAMILIES.index(spec.family))


def _random_tree(rng: random.Random, vertices: List[VertexId]) -> List[Tuple[VertexId, VertexId]]:
    return [(vertices[rng.randrange(i)], vertices[i]) for i in range(1, len(vertices))]


def _weights(rng: random.Random, n: int, w_max: int) -> dict:
    return {v: rng.randint(1, w_max) for v in range(1, n + 1)}


def _finish(spec: GenSpec, rng: random.Random, n: int, edges, k: Optional[int] = None,
            weights: Optional[dict] = None) -> Instance:
    g = MultiGraph(vertices=range(1, n + 1))
    for u, v, mult in edges:
        if u != v:
            g.add_edge(u, v, mult)
    if weights is None:
        weights = _weights(rng, n, spec.w_max)
    if k is None:
        k = rng.randint(spec.k_min, spec.k_max)
    return Instance(g, weights, k)


def _gen_random(spec: GenSpec, rng: random.Random) -> GeneratedInstance:
    n = rng.randint(spec.n_min, spec.n_max)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < spec.edge_p:
                edges.append((u, v, 2 if rng.random() < spec.double_p else 1))
    return GeneratedInstance(0, spec.family, _finish(spec, rng, n, edges))


def _gen_tree(spec: GenSpec, rng: random.Random) -> GeneratedInstance:
    n = rng.randint(spec.n_min, spec.n_max)
    edges = [(u, v, 1) for u, v in _random_tree(rng, list(range(1, n + 1)))]
    return GeneratedInstance(0, spec.family, _finish(spec, rng, n, edges))


def _gen_planted(spec: GenSpec, rng: random.Random) -> GeneratedInstance:
    k = rng.randint(max(1, spec.k_min), max(1, spec.k_max))
    decoy_weights = []
    left = k
    while left > 0 and len(decoy_weights) < spec.n_max - 1:
        w = rng.randint(1, min(spec.w_max, left))
        decoy_weights.append(w)
        left -= w
    planted_weight = sum(decoy_weights)

    n = max(rng.randint(spec.n_min, spec.n_max), len(decoy_weights) + 1)
    core = list(range(1, n - len(decoy_weights) + 1))
    decoys = list(range(len(core) + 1, n + 1))
    edges = [(u, v, 1) for u, v in _random_tree(rng, core)]
    for d in decoys:
        for u in rng.sample(core, min(len(core), rng.randint(1, 3))):
            edges.append((d, u, 2 if rng.random() < spec.double_p else 1))
    for a, b in zip(decoys, decoys[1:]):
        if rng.random() < spec.edge_p:
            edges.append((a, b, 1))

    weights = _weights(rng, n, spec.w_max)
    for d, w in zip(decoys, decoy_weights):
        weights[d] = w
    inst = _finish(spec, rng, n, edges, k=planted_weight, weights=weights)
    return GeneratedInstance(0, spec.family, inst, frozenset(decoys), planted_weight)


def _gen_theta(spec: GenSpec, rng: random.Random) -> GeneratedInstance:
    n_target = rng.randint(max(spec.n_min, 4), max(spec.n_max, 4))
    edges = []
    n = 2
    while n < n_target:
        length = min(rng.randint(1, 4), n_target - n)
        path = [1] + list(range(n + 1, n + length + 1)) + [2]
        edges.extend((a, b, 1) for a, b in zip(path, path[1:]))
        n += length
    if rng.random() < 0.5:
        edges.append((1, 2, 1))
    return GeneratedInstance(0, spec.family, _finish(spec, rng, n, edges))


def _gen_double(spec: GenSpec, rng: random.Random) -> GeneratedInstance:
    n = rng.randint(max(spec.n_min, 2), max(spec.n_max, 2))
    tree = _random_tree(rng, list(range(1, n + 1)))
    gadgets = max(1, int(len(tree) * max(spec.double_p, 0.2)))
    doubled = set(rng.sample(range(len(tree)), min(gadgets, len(tree))))
    edges = [(u, v, 2 if i in doubled else 1) for i, (u, v) in enumerate(tree)]
    if n > 2 and rng.random() < spec.edge_p:
        u, v = rng.sample(range(1, n + 1), 2)
        edges.append((u, v, 1))
    return GeneratedInstance(0, spec.family, _finish(spec, rng, n, edges))


def _gen_butterfly(spec: GenSpec, rng: random.Random) -> GeneratedInstance:
    n_target = rng.randint(max(spec.n_min, 3), max(spec.n_max, 3))
    petals = max(1, (n_target - 1) // 2)
    n = 1 + 2 * petals
    edges = []
    for p in range(petals):
        a, b = 2 + 2 * p, 3 + 2 * p
        edges.extend([(1, a, 1), (a, b, 1), (b, 1, 1)])
    if petals > 1 and rng.random() < spec.edge_p:
        u, v = rng.sample(range(2, n + 1), 2)
        edges.append((u, v, 1))
    return GeneratedInstance(0, spec.family, _finish(spec, rng, n, edges))


_BUILDERS = {
    "random": _gen_random,
    "planted": _gen_planted,
    "theta": _gen_theta,
    "double": _gen_double,
    "butterfly": _gen_butterfly,
    "tree": _gen_tree,
}


def generate_one(spec: GenSpec, index: int) -> GeneratedInstance:
    """The index-th instance of the stream; independent of every other index"""
    generated = _BUILDERS[spec.family](spec, _rng(spec, index))
    return replace(generated, index=index)


def generate(spec: GenSpec, count: Optional[int] = None) -> Iterator[GeneratedInstance]:
    index = 0
    while count is None or index < count:
        yield generate_one(spec, index)
        index += 1


def enumerate_connected_graphs(n: int) -> Iterator[MultiGraph]:
    """All connected simple graphs on exactly n vertices, one per isomorphism class"""
    if not 1 <= n <= 7:
        raise ValueError("the graph atlas covers 1 to 7 vertices")
    for graph in nx.graph_atlas_g():
        if graph.number_of_nodes() == n and nx.is_connected(graph):
            yield MultiGraph.from_networkx(graph)
