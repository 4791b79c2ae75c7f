"""
FVS Approximation - Local-ratio 2-approximation for unweighted feedback vertex
set on multigraphs (a double edge counts as a 2-cycle)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Set, Tuple

from utils.exceptions import InvariantViolation
from utils.graph_core import MultiGraph, VertexId, induced_subgraph, is_forest

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FvsResult:
    fvs: FrozenSet[VertexId]

    def __len__(self) -> int:
        return len(self.fvs)


def _degrees(g: MultiGraph, alive: Set[VertexId]) -> Dict[VertexId, int]:
    return {v: sum(g.multiplicity(v, u) for u in g.neighbors(v) if u in alive) for v in alive}


def _strip_trees(g: MultiGraph, alive: Set[VertexId]) -> Set[VertexId]:
    """Repeatedly drop vertices of degree <= 1; they lie on no cycle"""
    alive = set(alive)
    degree = _degrees(g, alive)
    stack = [v for v in alive if degree[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for u in g.neighbors(v):
            if u in alive:
                degree[u] -= g.multiplicity(u, v)
                if degree[u] <= 1:
                    stack.append(u)
    return alive


def approx_fvs(g: MultiGraph) -> FvsResult:
    residual = {v: Fraction(1) for v in g.vertices()}
    alive = _strip_trees(g, set(g.vertices()))
    levels: List[Tuple[FrozenSet[VertexId], List[VertexId]]] = []

    while alive:
        degree = _degrees(g, alive)
        step = min(residual[v] / (degree[v] - 1) for v in alive)
        for v in alive:
            residual[v] -= step * (degree[v] - 1)
        zero = sorted(v for v in alive if residual[v] == 0)
        levels.append((frozenset(alive), zero))
        alive = _strip_trees(g, alive - set(zero))

    fvs: Set[VertexId] = set()
    for level_vertices, zero in reversed(levels):
        fvs.update(zero)
        for z in zero:
            trial = fvs - {z}
            if is_forest(induced_subgraph(g, level_vertices - trial)):
                fvs = trial

    if not is_forest(induced_subgraph(g, set(g.vertices()) - fvs)):
        raise InvariantViolation("approximate feedback vertex set leaves a cycle")
    logger.debug(f"Approximate FVS of size {len(fvs)} after {len(levels)} rounds")
    return FvsResult(frozenset(fvs))
