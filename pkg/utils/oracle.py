"""
Exhaustive Oracles - Brute-force ground truth for tree deletion, feedback
vertex sets, flowers and cycle covers on small graphs
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List, Optional, Set, Tuple

from config import Config
from utils.exceptions import InvariantViolation, OracleLimitError
from utils.graph_core import (
    Decision,
    Instance,
    MultiGraph,
    Solution,
    VertexId,
    delete_vertices,
    induced_subgraph,
    is_forest,
    is_solution,
    is_tree,
    lies_on_cycle,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleAnswer:
    decision: Decision
    witness: Optional[Solution] = None
    optimum_weight: Optional[int] = None

    @property
    def is_yes(self) -> bool:
        return self.decision is Decision.YES


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise OracleLimitError(n, limit)


def exact_tds(inst: Instance, limit: Optional[int] = None) -> OracleAnswer:
    """Minimum-weight tree deletion set of weight <= k, ties to the smallest sorted tuple"""
    limit = Config.ORACLE_LIMIT if limit is None else limit
    _check_limit(inst.n, limit)
    if inst.k < 0 or inst.n == 0:
        return OracleAnswer(Decision.NO)

    vertices = inst.graph.vertices()
    ascending = sorted(inst.weight[v] for v in vertices)
    best: Optional[Tuple[int, Tuple[VertexId, ...]]] = None
    for size in range(len(vertices)):
        if sum(ascending[:size]) > inst.k:
            break
        for subset in combinations(vertices, size):
            w = inst.weight_of(subset)
            if w > inst.k or (best is not None and (w, subset) >= best):
                continue
            if is_tree(delete_vertices(inst.graph, subset)):
                best = (w, subset)

    if best is None:
        return OracleAnswer(Decision.NO)
    witness = Solution(frozenset(best[1]))
    if not is_solution(inst, witness.deleted):
        raise InvariantViolation(f"oracle witness {best[1]} is not a tree deletion set")
    return OracleAnswer(Decision.YES, witness, best[0])


def exact_fvs(g: MultiGraph, limit: Optional[int] = None) -> int:
    limit = Config.ORACLE_LIMIT if limit is None else limit
    _check_limit(len(g), limit)
    vertices = g.vertices()
    for size in range(len(vertices) + 1):
        for subset in combinations(vertices, size):
            if is_forest(delete_vertices(g, subset)):
                return size
    return len(vertices)


def minimum_cycle_cover(g: MultiGraph, x: VertexId, limit: Optional[int] = None) -> Set[VertexId]:
    """Smallest vertex set avoiding x that meets every cycle through x"""
    limit = Config.COVER_LIMIT if limit is None else limit
    _check_limit(len(g), limit)
    others = [v for v in g.vertices() if v != x]
    for size in range(len(others) + 1):
        for subset in combinations(others, size):
            if not lies_on_cycle(delete_vertices(g, subset), x):
                return set(subset)
    return set(others)


def exact_cycle_cover(g: MultiGraph, x: VertexId, limit: Optional[int] = None) -> int:
    return len(minimum_cycle_cover(g, x, limit))


def _petal_supports(g: MultiGraph, x: VertexId) -> List[FrozenSet[VertexId]]:
    """Inclusion-minimal vertex sets T with a cycle through x inside T + x"""
    others = [v for v in g.vertices() if v != x]
    feasible: List[FrozenSet[VertexId]] = []
    for size in range(1, len(others) + 1):
        for subset in combinations(others, size):
            support = frozenset(subset)
            if any(smaller <= support for smaller in feasible):
                continue
            if lies_on_cycle(induced_subgraph(g, support | {x}), x):
                feasible.append(support)
    return feasible


def exact_flower(g: MultiGraph, x: VertexId, limit: Optional[int] = None) -> int:
    """Maximum number of cycles through x pairwise meeting only in x"""
    limit = Config.PACKING_LIMIT if limit is None else limit
    _check_limit(len(g), limit)
    supports = _petal_supports(g, x)

    @lru_cache(maxsize=None)
    def pack(start: int, used: FrozenSet[VertexId]) -> int:
        best = 0
        for i in range(start, len(supports)):
            if not supports[i] & used:
                best = max(best, 1 + pack(i + 1, used | supports[i]))
        return best

    return pack(0, frozenset())
