"""
Reduction Rules - The six wTDS reduction rules and the fixpoint driver that
produces a semi-reduced instance
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from utils.exceptions import InvariantViolation, WtdsError
from utils.flower import max_flower
from utils.graph_core import (
    Instance,
    MultiGraph,
    VertexId,
    connected_components,
)

logger = logging.getLogger(__name__)


class RuleKind(str, Enum):
    NOT_APPLICABLE = "not_applicable"
    APPLIED = "applied"
    DECIDED_NO = "decided_no"


@dataclass(frozen=True)
class TraceStep:
    """One rule application; `payload` holds whatever replay needs"""

    rule: int
    affected: Tuple[VertexId, ...]
    k_before: int
    k_after: int
    payload: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "rule": self.rule,
            "affected": list(self.affected),
            "k_before": self.k_before,
            "k_after": self.k_after,
            "payload": self.payload,
        }


@dataclass(frozen=True)
class RuleOutcome:
    kind: RuleKind
    instance: Optional[Instance] = None
    step: Optional[TraceStep] = None

    @classmethod
    def not_applicable(cls) -> "RuleOutcome":
        return cls(RuleKind.NOT_APPLICABLE)

    @classmethod
    def applied(cls, instance: Instance, step: TraceStep) -> "RuleOutcome":
        return cls(RuleKind.APPLIED, instance, step)

    @classmethod
    def decided_no(cls, step: TraceStep) -> "RuleOutcome":
        return cls(RuleKind.DECIDED_NO, None, step)


class RuleTrace:
    """Ordered log of rule applications"""

    def __init__(self, steps: Optional[List[TraceStep]] = None):
        self.steps: List[TraceStep] = list(steps or [])

    def append(self, step: TraceStep) -> None:
        self.steps.append(step)

    def counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for step in self.steps:
            out[step.rule] = out.get(step.rule, 0) + 1
        return out

    def to_list(self) -> List[Dict]:
        return [step.to_dict() for step in self.steps]

    def __iter__(self) -> Iterator[TraceStep]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class SemiReduction:
    instance: Optional[Instance]
    trace: RuleTrace
    decided_no: bool = False


# ----- step application (shared by the rules and by replay) -----

def apply_step(inst: Instance, step: TraceStep) -> Instance:
    """Apply a recorded step; used both when a rule fires and on replay"""
    graph = inst.graph.copy()
    weight = dict(inst.weight)
    payload = step.payload

    if step.rule in (2, 5):
        for v in step.affected:
            graph.remove_vertex(v)
            del weight[v]
    elif step.rule == 3:
        leaf, into = payload["leaf"], payload["into"]
        weight[into] += weight.pop(leaf)
        graph.remove_vertex(leaf)
    elif step.rule == 4:
        for v in step.affected:
            graph.remove_vertex(v)
            del weight[v]
        chain = [payload["start"]]
        for vid, w in payload["new"]:
            graph.add_vertex(vid)
            weight[vid] = w
            chain.append(vid)
        chain.append(payload["end"])
        for a, b in zip(chain, chain[1:]):
            graph.add_edge(a, b)
    elif step.rule == 6:
        for v in step.affected:
            weight[v] = step.k_after + 1
    else:
        raise WtdsError(f"rule {step.rule} has no replayable effect")
    return Instance(graph, weight, step.k_after)


def replay(inst: Instance, trace: RuleTrace) -> Optional[Instance]:
    """Reapply a trace to the instance it was recorded on; None if it ended in NO"""
    current = inst
    for step in trace:
        if step.rule == 1 or step.payload.get("decided_no"):
            return None
        current = apply_step(current, step)
    return current


# ----- the rules -----

def rule1_negative_k(inst: Instance) -> RuleOutcome:
    if inst.k < 0:
        return RuleOutcome.decided_no(TraceStep(1, (), inst.k, inst.k))
    return RuleOutcome.not_applicable()


def rule2_small_components(inst: Instance) -> RuleOutcome:
    components = connected_components(inst.graph)
    if len(components) <= 1:
        return RuleOutcome.not_applicable()
    threshold = inst.total_weight() - inst.k
    doomed = [c for c in components if inst.weight_of(c) < threshold]
    if not doomed:
        return RuleOutcome.not_applicable()
    removed = sorted(v for c in doomed for v in c)
    k_after = inst.k - inst.weight_of(removed)
    if len(removed) == inst.n:
        step = TraceStep(2, tuple(removed), inst.k, k_after, {"decided_no": True})
        return RuleOutcome.decided_no(step)
    step = TraceStep(2, tuple(removed), inst.k, k_after)
    return RuleOutcome.applied(apply_step(inst, step), step)


def rule3_degree_one(inst: Instance) -> RuleOutcome:
    # leaves are peeled highest id first so older vertices absorb the weight
    g = inst.graph
    for v in reversed(g.vertices()):
        if g.degree(v) == 1:
            (u,) = g.neighbors(v)
            step = TraceStep(3, (v,), inst.k, inst.k, {"leaf": v, "into": u})
            return RuleOutcome.applied(apply_step(inst, step), step)
    return RuleOutcome.not_applicable()


def _is_run_vertex(g: MultiGraph, v: VertexId) -> bool:
    nbrs = g.neighbors(v)
    return len(nbrs) == 2 and all(g.multiplicity(v, u) == 1 for u in nbrs)


def degree_two_runs(g: MultiGraph) -> List[Tuple[VertexId, List[VertexId], VertexId]]:
    """Maximal runs of degree-2 vertices as (v0, inner, v_end), longest first.

    A component that is a bare cycle yields one run whose two ends are its
    minimum vertex.
    """
    seen = set()
    runs = []
    for v in g.vertices():
        if v in seen or not _is_run_vertex(g, v):
            continue
        seen.add(v)
        left, right = g.neighbors(v)

        path = [v]
        prev, cur = v, right
        while cur != v and cur not in seen and _is_run_vertex(g, cur):
            seen.add(cur)
            path.append(cur)
            prev, cur = cur, next(u for u in g.neighbors(cur) if u != prev)
        if cur == v:
            start = path.index(min(path))
            ring = path[start:] + path[:start]
            runs.append((ring[0], ring[1:], ring[0]))
            continue
        end = cur

        prev, cur = v, left
        while cur not in seen and _is_run_vertex(g, cur):
            seen.add(cur)
            path.insert(0, cur)
            prev, cur = cur, next(u for u in g.neighbors(cur) if u != prev)
        runs.append((cur, path, end))
    runs.sort(key=lambda run: (-len(run[1]), min(run[1])))
    return runs


def rule4_path_compress(inst: Instance) -> RuleOutcome:
    g = inst.graph
    for start, inner, end in degree_two_runs(g):
        heavy = inst.weight[start] > inst.k or inst.weight[end] > inst.k
        if len(inner) < 3 and not (heavy and len(inner) >= 2):
            continue
        weights = [inst.weight[v] for v in inner]
        w1 = min(weights)
        w2 = sum(weights) - w1
        u1 = g.fresh_id
        new = [(u1, w1)] if heavy else [(u1, w1), (u1 + 1, w2)]
        payload = {"start": start, "end": end, "new": new, "part_b": heavy}
        step = TraceStep(4, tuple(sorted(inner)), inst.k, inst.k, payload)
        logger.debug(f"Rule 4 compresses run of {len(inner)} between {start} and {end}")
        return RuleOutcome.applied(apply_step(inst, step), step)
    return RuleOutcome.not_applicable()


def rule5_flower(inst: Instance) -> RuleOutcome:
    g = inst.graph
    need = inst.k + 1
    for x in g.vertices():
        # an x-flower of order t uses 2t incidences at x
        if g.degree(x) < 2 * need:
            continue
        petals = max_flower(g, x)
        if len(petals) >= need:
            k_after = inst.k - inst.weight[x]
            step = TraceStep(5, (x,), inst.k, k_after, {"order": len(petals)})
            logger.debug(f"Rule 5 removes {x}: flower of order {len(petals)} >= {need}")
            return RuleOutcome.applied(apply_step(inst, step), step)
    return RuleOutcome.not_applicable()


def rule6_weight_cap(inst: Instance) -> RuleOutcome:
    cap = inst.k + 1
    heavy = tuple(v for v in inst.graph.vertices() if inst.weight[v] > cap)
    if not heavy:
        return RuleOutcome.not_applicable()
    step = TraceStep(6, heavy, inst.k, inst.k, {"cap": cap})
    return RuleOutcome.applied(apply_step(inst, step), step)


RULES: List[Tuple[int, Callable[[Instance], RuleOutcome]]] = [
    (1, rule1_negative_k),
    (2, rule2_small_components),
    (3, rule3_degree_one),
    (4, rule4_path_compress),
    (5, rule5_flower),
    (6, rule6_weight_cap),
]


def measure(inst: Instance) -> Tuple[int, int, int]:
    cap = inst.k + 1
    excess = sum(w - cap for w in inst.weight.values() if w > cap)
    return inst.n, inst.graph.edge_count(), excess


def semi_reduce(inst: Instance) -> SemiReduction:
    """Apply rules 1..6 in priority order until none applies"""
    trace = RuleTrace()
    current = inst
    while True:
        if current.n == 0:
            logger.info("Reduction emptied the graph, answer is NO")
            return SemiReduction(None, trace, decided_no=True)
        for rule_id, rule in RULES:
            outcome = rule(current)
            if outcome.kind is RuleKind.NOT_APPLICABLE:
                continue
            trace.append(outcome.step)
            if outcome.kind is RuleKind.DECIDED_NO:
                logger.info(f"Rule {rule_id} decided NO after {len(trace)} steps")
                return SemiReduction(None, trace, decided_no=True)
            if measure(outcome.instance) >= measure(current):
                raise InvariantViolation(f"rule {rule_id} did not shrink the instance")
            current = outcome.instance
            break
        else:
            break
    logger.info(f"Semi-reduced to n={current.n}, m={current.graph.edge_count()}, "
                f"k={current.k} using {len(trace)} rule applications {trace.counts()}")
    return SemiReduction(current, trace)


def is_semi_reduced(inst: Instance) -> bool:
    return all(rule(inst).kind is RuleKind.NOT_APPLICABLE for _, rule in RULES)
