"""
Graph Core - Weighted multigraphs, wTDS instances and the mutation primitives
shared by the reduction rules and the decomposition
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from utils.exceptions import GraphError, InvariantViolation

logger = logging.getLogger(__name__)

VertexId = int
Edge = Tuple[VertexId, VertexId, int]

MULT = "mult"
MAX_MULTIPLICITY = 2


class Decision(str, Enum):
    YES = "YES"
    NO = "NO"


class MultiGraph:
    """Undirected multigraph without self-loops, edge multiplicity in {1, 2}.

    Backed by a simple networkx graph carrying the multiplicity as an edge
    attribute. Vertex ids handed out by `add_vertex` are never reused, including
    across copies.
    """

    def __init__(self, vertices: Iterable[VertexId] = (), edges: Iterable = ()):
        self._g = nx.Graph()
        self._next_id = 1
        for v in vertices:
            self.add_vertex(v)
        for edge in edges:
            u, v = edge[0], edge[1]
            mult = edge[2] if len(edge) > 2 else 1
            for w in (u, v):
                if w not in self._g:
                    self.add_vertex(w)
            self.add_edge(u, v, mult)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "MultiGraph":
        """Relabel an arbitrary networkx graph onto ids 1..n (sorted node order)"""
        nodes = sorted(graph.nodes())
        label = {node: i + 1 for i, node in enumerate(nodes)}
        g = cls(vertices=label.values())
        for a, b in graph.edges():
            g.add_edge(label[a], label[b])
        return g

    # ----- queries -----

    def vertices(self) -> List[VertexId]:
        return sorted(self._g.nodes())

    def __contains__(self, v) -> bool:
        return v in self._g

    def __len__(self) -> int:
        return self._g.number_of_nodes()

    def __bool__(self) -> bool:
        return self._g.number_of_nodes() > 0

    def neighbors(self, v: VertexId) -> List[VertexId]:
        self._require(v)
        return sorted(self._g.neighbors(v))

    def multiplicity(self, u: VertexId, v: VertexId) -> int:
        data = self._g.get_edge_data(u, v)
        return data[MULT] if data else 0

    def degree(self, v: VertexId) -> int:
        self._require(v)
        return self._g.degree(v, weight=MULT)

    def edges(self) -> List[Edge]:
        out = []
        for u, v, mult in self._g.edges(data=MULT):
            a, b = (u, v) if u < v else (v, u)
            out.append((a, b, mult))
        return sorted(out)

    def edge_count(self) -> int:
        """Number of edges counted with multiplicity"""
        return int(self._g.size(weight=MULT))

    def has_double_edge(self) -> bool:
        return any(mult == MAX_MULTIPLICITY for _, _, mult in self._g.edges(data=MULT))

    @property
    def fresh_id(self) -> VertexId:
        return self._next_id

    def simple_view(self) -> nx.Graph:
        """Read-only view of the underlying simple graph"""
        return self._g.copy(as_view=True)

    # ----- mutation (callers own their copy) -----

    def add_vertex(self, v: Optional[VertexId] = None) -> VertexId:
        if v is None:
            v = self._next_id
        elif v in self._g:
            raise GraphError(f"vertex {v} already present")
        if v < 1:
            raise GraphError(f"vertex ids are positive integers, got {v}")
        self._g.add_node(v)
        self._next_id = max(self._next_id, v + 1)
        return v

    def add_edge(self, u: VertexId, v: VertexId, mult: int = 1) -> None:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if mult not in (1, 2):
            raise GraphError(f"edge multiplicity must be 1 or 2, got {mult}")
        self._require(u)
        self._require(v)
        current = self.multiplicity(u, v)
        self._g.add_edge(u, v, **{MULT: min(MAX_MULTIPLICITY, current + mult)})

    def set_double(self, u: VertexId, v: VertexId) -> None:
        self.add_edge(u, v, MAX_MULTIPLICITY)

    def remove_vertex(self, v: VertexId) -> None:
        self._require(v)
        self._g.remove_node(v)

    def copy(self) -> "MultiGraph":
        clone = MultiGraph()
        clone._g = self._g.copy()
        clone._next_id = self._next_id
        return clone

    def _require(self, v: VertexId) -> None:
        if v not in self._g:
            raise GraphError(f"unknown vertex {v}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices() == other.vertices() and self.edges() == other.edges()

    def __repr__(self) -> str:
        return f"MultiGraph(n={len(self)}, m={self.edge_count()})"


def delete_vertices(g: MultiGraph, vs: Iterable[VertexId]) -> MultiGraph:
    vs = set(vs)
    unknown = [v for v in vs if v not in g]
    if unknown:
        raise GraphError(f"cannot delete unknown vertices {sorted(unknown)}")
    out = g.copy()
    out._g.remove_nodes_from(vs)
    return out


def induced_subgraph(g: MultiGraph, vs: Iterable[VertexId]) -> MultiGraph:
    keep = set(vs)
    return delete_vertices(g, [v for v in g.vertices() if v not in keep])


def connected_components(g: MultiGraph) -> List[Set[VertexId]]:
    """Components sorted by their minimum vertex id"""
    return sorted((set(c) for c in nx.connected_components(g._g)), key=min)


def is_connected(g: MultiGraph) -> bool:
    return len(g) > 0 and nx.is_connected(g._g)


def is_tree(g: MultiGraph) -> bool:
    if len(g) == 0 or g.has_double_edge():
        return False
    return g.edge_count() == len(g) - 1 and is_connected(g)


def is_forest(g: MultiGraph) -> bool:
    """Every component a tree; the empty graph counts as a forest"""
    if len(g) == 0:
        return True
    return not g.has_double_edge() and nx.is_forest(g._g)


def lies_on_cycle(g: MultiGraph, x: VertexId) -> bool:
    """True iff some cycle (a double edge included) passes through x"""
    if any(g.multiplicity(x, y) == MAX_MULTIPLICITY for y in g.neighbors(x)):
        return True
    if g.degree(x) < 2:
        return False
    return any(x in block and len(block) >= 3 for block in nx.biconnected_components(g._g))


def contract_component(g: MultiGraph, comp: Iterable[VertexId],
                       weights: Dict[VertexId, int]) -> Tuple[MultiGraph, VertexId, int]:
    """Replace a connected vertex set by one fresh vertex carrying its total weight"""
    comp = set(comp)
    if not comp:
        raise GraphError("cannot contract an empty vertex set")
    unknown = [v for v in comp if v not in g]
    if unknown:
        raise GraphError(f"cannot contract unknown vertices {sorted(unknown)}")
    if len(comp) == len(g):
        raise GraphError("cannot contract the whole graph")
    if not is_connected(induced_subgraph(g, comp)):
        raise GraphError(f"component {sorted(comp)} is not connected")

    boundary: Dict[VertexId, int] = {}
    for v in comp:
        for u in g.neighbors(v):
            if u not in comp:
                boundary[u] = boundary.get(u, 0) + g.multiplicity(u, v)
    for u, count in sorted(boundary.items()):
        if count > 1:
            raise InvariantViolation(f"edges from outside vertex {u} into contracted component", count, 1)

    out = delete_vertices(g, comp)
    merged = out.add_vertex()
    for u in sorted(boundary):
        out.add_edge(merged, u)
    weight = sum(weights[v] for v in comp)
    return out, merged, weight


@dataclass
class Instance:
    """A wTDS instance (G, w, k)"""

    graph: MultiGraph
    weight: Dict[VertexId, int]
    k: int

    def __post_init__(self):
        vertices = set(self.graph.vertices())
        if set(self.weight) != vertices:
            missing = sorted(vertices - set(self.weight))
            extra = sorted(set(self.weight) - vertices)
            raise GraphError(f"weight map mismatch (missing {missing}, extra {extra})")
        bad = sorted(v for v, w in self.weight.items() if w < 1)
        if bad:
            raise GraphError(f"weights must be positive, offending vertices {bad}")

    @classmethod
    def build(cls, edges: Iterable, k: int, weights: Optional[Dict[VertexId, int]] = None,
              vertices: Iterable[VertexId] = ()) -> "Instance":
        """Convenience constructor; unspecified weights default to 1"""
        weights = dict(weights or {})
        g = MultiGraph(vertices=sorted(set(vertices) | set(weights)), edges=edges)
        return cls(g, {v: weights.get(v, 1) for v in g.vertices()}, k)

    @property
    def n(self) -> int:
        return len(self.graph)

    def total_weight(self) -> int:
        return sum(self.weight.values())

    def weight_of(self, vs: Iterable[VertexId]) -> int:
        return sum(self.weight[v] for v in vs)

    def copy(self) -> "Instance":
        return Instance(self.graph.copy(), dict(self.weight), self.k)

    def without(self, vs: Iterable[VertexId], k: Optional[int] = None) -> "Instance":
        vs = set(vs)
        graph = delete_vertices(self.graph, vs)
        weight = {v: w for v, w in self.weight.items() if v not in vs}
        return Instance(graph, weight, self.k if k is None else k)

    def induced(self, vs: Iterable[VertexId]) -> "Instance":
        keep = set(vs)
        return self.without([v for v in self.graph.vertices() if v not in keep])

    def summary(self) -> Dict[str, int]:
        return {"n": self.n, "m": self.graph.edge_count(), "k": self.k,
                "total_weight": self.total_weight()}


@dataclass(frozen=True)
class Solution:
    deleted: FrozenSet[VertexId] = field(default_factory=frozenset)

    def weight(self, inst: Instance) -> int:
        return inst.weight_of(self.deleted)


def is_solution(inst: Instance, deleted: Iterable[VertexId]) -> bool:
    deleted = set(deleted)
    if not deleted <= set(inst.graph.vertices()):
        return False
    if inst.weight_of(deleted) > inst.k:
        return False
    return is_tree(delete_vertices(inst.graph, deleted))
