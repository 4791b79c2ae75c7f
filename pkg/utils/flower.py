"""
Flower Finder - Maximum x-flowers and small cycle covers at a vertex

Cycles through x are turned into paths between terminals: every edge x-y becomes
a terminal hanging off y (two terminals for a double edge) and x is dropped.
Disjoint terminal paths are packed through a maximum matching in the auxiliary
graph where every non-terminal vertex is split into two adjacent twins.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from config import Config
from utils.exceptions import InvariantViolation
from utils.graph_core import MultiGraph, VertexId, delete_vertices, lies_on_cycle

logger = logging.getLogger(__name__)

Node = Tuple  # ("v", vertex, twin) or ("t", vertex, index)
Cycle = Tuple[VertexId, ...]


@dataclass(frozen=True)
class FlowerOrCover:
    flower: Optional[Tuple[Cycle, ...]] = None
    cover: Optional[FrozenSet[VertexId]] = None

    @property
    def is_flower(self) -> bool:
        return self.flower is not None


@dataclass
class AuxiliaryGraph:
    graph: nx.Graph
    terminals: Dict[Node, VertexId]
    inner: List[VertexId]


def max_matching(g) -> Set[Tuple]:
    """Maximum-cardinality matching of the underlying simple graph"""
    simple = g.simple_view() if isinstance(g, MultiGraph) else g
    matching = nx.max_weight_matching(simple, maxcardinality=True)
    return {tuple(sorted(edge)) for edge in matching}


def auxiliary_graph(g: MultiGraph, x: VertexId) -> AuxiliaryGraph:
    aux = nx.Graph()
    terminals: Dict[Node, VertexId] = {}
    inner = [v for v in g.vertices() if v != x]

    for v in inner:
        aux.add_edge(("v", v, 0), ("v", v, 1))
    for u, v, _ in g.edges():
        if x in (u, v):
            continue
        for a in (0, 1):
            for b in (0, 1):
                aux.add_edge(("v", u, a), ("v", v, b))
    for y in g.neighbors(x):
        for i in range(g.multiplicity(x, y)):
            t = ("t", y, i)
            terminals[t] = y
            aux.add_edge(t, ("v", y, 0))
            aux.add_edge(t, ("v", y, 1))

    ordered = nx.Graph()
    ordered.add_nodes_from(sorted(aux.nodes()))
    ordered.add_edges_from(sorted(tuple(sorted(e)) for e in aux.edges()))
    return AuxiliaryGraph(ordered, terminals, inner)


def _flower_from_matching(aux: AuxiliaryGraph, matching: Set[Tuple], x: VertexId) -> List[Cycle]:
    twins = {frozenset((("v", v, 0), ("v", v, 1))) for v in aux.inner}
    diff = {frozenset(e) for e in matching} ^ twins

    alternating = nx.Graph()
    alternating.add_edges_from(tuple(sorted(e)) for e in diff)
    cycles = []
    for comp in sorted(nx.connected_components(alternating), key=min):
        ends = sorted(n for n in comp if alternating.degree(n) == 1)
        if len(ends) != 2 or not all(n in aux.terminals for n in ends):
            continue
        path = nx.shortest_path(alternating, ends[0], ends[1])
        cycle = [x]
        for node in path:
            v = node[1]
            if cycle[-1] != v:
                cycle.append(v)
        cycles.append(tuple(cycle))
    return cycles


def _check_flower(g: MultiGraph, x: VertexId, cycles: List[Cycle]) -> None:
    used: Set[VertexId] = set()
    for cycle in cycles:
        rest = cycle[1:]
        if cycle[0] != x or len(set(rest)) != len(rest) or x in rest or not rest:
            raise InvariantViolation(f"malformed petal {cycle}")
        if used & set(rest):
            raise InvariantViolation(f"petal {cycle} shares a vertex besides {x}")
        used |= set(rest)
        if len(rest) == 1:
            if g.multiplicity(x, rest[0]) != 2:
                raise InvariantViolation(f"petal {cycle} needs a double edge")
            continue
        closed = list(cycle) + [x]
        if any(g.multiplicity(a, b) == 0 for a, b in zip(closed, closed[1:])):
            raise InvariantViolation(f"petal {cycle} is not a cycle of the graph")


def max_flower(g: MultiGraph, x: VertexId) -> List[Cycle]:
    """A maximum set of cycles pairwise meeting only in x"""
    if g.degree(x) < 2:
        return []
    aux = auxiliary_graph(g, x)
    matching = max_matching(aux.graph)
    cycles = _flower_from_matching(aux, matching, x)
    order = len(matching) - len(aux.inner)
    if len(cycles) != order:
        raise InvariantViolation(f"extracted {len(cycles)} petals at {x}, matching promises {order}")
    _check_flower(g, x, cycles)
    return cycles


def gallai_edmonds(graph: nx.Graph) -> Tuple[Set, Set, Set]:
    """Edmonds-Gallai partition (D, A, C) of a graph.

    D holds the vertices missed by some maximum matching, A their other
    neighbours, C everything else.
    """
    size = len(max_matching(graph))
    d = set()
    for node in sorted(graph.nodes()):
        rest = graph.subgraph([n for n in graph.nodes() if n != node])
        if len(max_matching(rest)) == size:
            d.add(node)
    a = {n for node in d for n in graph.neighbors(node)} - d
    c = set(graph.nodes()) - d - a
    return d, a, c


def _cover_from_partition(aux: AuxiliaryGraph) -> Set[VertexId]:
    d, a, c = gallai_edmonds(aux.graph)
    cover = set()
    for node in a:
        cover.add(node[1])
    for part in (d, c):
        for comp in nx.connected_components(aux.graph.subgraph(part)):
            terminals = sorted(n for n in comp if n in aux.terminals)
            for t in terminals[1:]:
                cover.add(aux.terminals[t])
    return cover


def cover_is_valid(g: MultiGraph, x: VertexId, cover) -> bool:
    return x not in cover and not lies_on_cycle(delete_vertices(g, cover), x)


def flower_or_cover(g: MultiGraph, x: VertexId, k: int) -> FlowerOrCover:
    """Either k+1 petals at x, or at most 2k vertices meeting every cycle through x"""
    petals = max_flower(g, x)
    if len(petals) >= k + 1:
        return FlowerOrCover(flower=tuple(petals[:k + 1]))
    if not petals:
        cover: Set[VertexId] = set()
    else:
        cover = _cover_from_partition(auxiliary_graph(g, x))

    if len(cover) > 2 * k or not cover_is_valid(g, x, cover):
        if len(g) > Config.COVER_LIMIT:
            raise InvariantViolation(f"cycle cover at {x} failed validation")
        from utils.oracle import minimum_cycle_cover

        logger.warning(f"Cover at {x} failed validation, using exhaustive search")
        cover = minimum_cycle_cover(g, x, limit=Config.COVER_LIMIT)
        if len(cover) > 2 * k:
            raise InvariantViolation(f"minimum cycle cover at {x}", len(cover), 2 * k)
    return FlowerOrCover(cover=frozenset(cover))
