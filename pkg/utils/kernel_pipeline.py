"""
Kernel Pipeline - semi-reduce, decompose, sparsify the contracted vertices
through their neighbourhood equations, and assemble the final kernel
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional

import psutil

from utils.decomposition import Decomposition, decompose
from utils.graph_core import (
    Decision,
    Instance,
    MultiGraph,
    VertexId,
    connected_components,
    induced_subgraph,
    is_tree,
)
from utils.exceptions import InvariantViolation
from utils.ledger import BoundLedger
from utils.lineq import LinearSystem, evaluate, reduce_equations
from utils.reductions import RuleTrace, apply_step, rule6_weight_cap, semi_reduce

logger = logging.getLogger(__name__)


@dataclass
class EquationEncoding:
    variable_index: Dict[VertexId, int]
    equation_index: Dict[VertexId, int]
    system: LinearSystem


@dataclass
class KernelReport:
    kernel: Instance
    i_kept: FrozenSet[VertexId]
    trace: RuleTrace
    bounds: BoundLedger
    decided: Optional[Decision] = None
    decomposition: Optional[Decomposition] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return self.decided.value if self.decided else "kernel"

    def sizes(self) -> Dict[str, int]:
        sizes = {"n": self.kernel.n, "m": self.kernel.graph.edge_count(), "k": self.kernel.k,
                 "i_kept": len(self.i_kept)}
        if self.decomposition is not None:
            sizes.update(c_m=len(self.decomposition.c_m), c_g=len(self.decomposition.c_g),
                         i=len(self.decomposition.i_set))
        return sizes

    def to_dict(self, source: Instance, with_resources: bool = True) -> Dict:
        report = {
            "input": source.summary(),
            "decided": self.status,
            "kernel": self.sizes(),
            "bounds": self.bounds.to_list(),
            "trace": self.trace.to_list(),
        }
        if with_resources:
            report["timings"] = {stage: round(seconds, 6) for stage, seconds in self.timings.items()}
            report["resources"] = {"rss_mb": rss_mb()}
        return report


def rss_mb() -> float:
    return round(psutil.Process().memory_info().rss / (1024 * 1024), 2)


def encode_equations(dec: Decomposition) -> EquationEncoding:
    """One row per I-vertex: 1 on each C_m neighbour, constant -1"""
    g, k = dec.instance.graph, dec.instance.k
    columns = sorted(dec.c_m)
    variable_index = {u: j for j, u in enumerate(columns)}
    equation_index: Dict[VertexId, int] = {}
    rows, tags = [], []
    for i, v in enumerate(sorted(dec.i_set)):
        nbrs = g.neighbors(v)
        outside = [u for u in nbrs if u not in variable_index]
        if outside:
            raise InvariantViolation(f"I-vertex {v} has neighbours {outside} outside C_m")
        if not nbrs:
            raise InvariantViolation(f"I-vertex {v} has no neighbour")
        if len(nbrs) > 2 * k + 1:
            raise InvariantViolation(f"support of the equation of {v}", len(nbrs), 2 * k + 1)
        row = [0] * (len(columns) + 1)
        for u in nbrs:
            row[variable_index[u]] = 1
        row[-1] = -1
        rows.append(row)
        tags.append(v)
        equation_index[v] = i
    return EquationEncoding(variable_index, equation_index, LinearSystem(rows, tags))


def assignment_from_deletion(encoding: EquationEncoding, deleted: Iterable[VertexId]) -> List[int]:
    """x_u = 1 for every kept C_m vertex, 0 for deleted ones"""
    gone = set(deleted)
    order = sorted(encoding.variable_index, key=encoding.variable_index.get)
    return [0 if u in gone else 1 for u in order]


def violated_rows(system: LinearSystem, assignment: List[int]) -> List:
    return [tag for row, tag in zip(system.rows, system.tags) if evaluate(row, assignment) != 0]


def _decided(decision: Decision, k: int, trace: RuleTrace, ledger: BoundLedger,
             timings: Dict[str, float]) -> KernelReport:
    empty = Instance(MultiGraph(), {}, k)
    return KernelReport(empty, frozenset(), trace, ledger, decision, timings=timings)


def kernelize(inst: Instance) -> KernelReport:
    timings: Dict[str, float] = {}
    started = time.perf_counter()

    reduction = semi_reduce(inst)
    timings["reduce"] = time.perf_counter() - started
    trace = reduction.trace
    if reduction.decided_no:
        return _decided(Decision.NO, inst.k, trace, BoundLedger(), timings)
    reduced = reduction.instance
    k = reduced.k
    if is_tree(reduced.graph):
        logger.info("Semi-reduced graph is a tree, answer is YES")
        return _decided(Decision.YES, k, trace, BoundLedger(), timings)

    mark = time.perf_counter()
    dec = decompose(reduced)
    timings["decompose"] = time.perf_counter() - mark
    if dec is Decision.NO:
        return _decided(Decision.NO, k, trace, BoundLedger(), timings)
    ledger = dec.ledger

    mark = time.perf_counter()
    encoding = encode_equations(dec)
    kept = reduce_equations(encoding.system, k)
    i_kept = frozenset(kept.tags)
    timings["equations"] = time.perf_counter() - mark
    ledger.check("|I'| <= 8k^3+10k^2+3k+1", len(i_kept), 8 * k ** 3 + 10 * k * k + 3 * k + 1)
    ledger.check("|I'| <= (|C_m|+1)(k+1)", len(i_kept), (len(dec.c_m) + 1) * (k + 1))

    kernel = dec.instance.induced(dec.c_m | dec.c_g | i_kept)
    capped = rule6_weight_cap(kernel)
    if capped.instance is not None:
        trace.append(capped.step)
        kernel = apply_step(kernel, capped.step)

    _check_kernel(kernel, dec, i_kept, ledger)
    timings["total"] = time.perf_counter() - started
    logger.info(f"Kernel: n={kernel.n}, m={kernel.graph.edge_count()}, k={kernel.k} "
                f"(input n={inst.n}, m={inst.graph.edge_count()}, k={inst.k})")
    return KernelReport(kernel, i_kept, trace, ledger, None, dec, timings)


def _check_kernel(kernel: Instance, dec: Decomposition, i_kept: FrozenSet[VertexId],
                  ledger: BoundLedger) -> None:
    k = kernel.k
    g = dec.instance.graph
    ledger.require("kernel budget unchanged", kernel.k == dec.instance.k)
    ledger.check("kernel weights <= k+1", max(kernel.weight.values(), default=0), k + 1)

    ledger.check("|V(kernel)| <= |C_m|+|C_g|+|I'|", kernel.n, len(dec.c_m) + len(dec.c_g) + len(i_kept))
    vertex_bound = (8 * k * k + 2 * k) + max(160 * k ** 4 + 248 * k ** 3 + 80 * k * k - 16 * k - 8, 0) \
        + (8 * k ** 3 + 10 * k * k + 3 * k + 1)
    ledger.check("|V(kernel)| <= O(k^4) vertex bound", kernel.n, vertex_bound)

    forest_components = connected_components(induced_subgraph(g, dec.c_g))
    edge_bound = induced_subgraph(g, dec.c_m).edge_count() + induced_subgraph(g, dec.c_g).edge_count() \
        + (2 * k + 2) * len(forest_components) + (2 * k + 1) * len(i_kept)
    ledger.check("|E(kernel)| <= |E(C_m)|+|E(C_g)|+(2k+2)#C_g+(2k+1)|I'|",
                 kernel.graph.edge_count(), edge_bound)
    bits = sum(w.bit_length() for w in kernel.weight.values())
    ledger.check("weight encoding bits <= |V| ceil(log2(k+2))", bits, kernel.n * math.ceil(math.log2(k + 2)))
