"""
Linear Equations - Exact row-basis peeling that keeps a small subsystem with
the same low-violation behaviour as the whole system
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence

logger = logging.getLogger(__name__)


@dataclass
class LinearSystem:
    """Rows over the rationals; the last column is the constant term"""

    rows: List[tuple]
    tags: List[Any] = field(default_factory=list)

    def __post_init__(self):
        self.rows = [tuple(Fraction(c) for c in row) for row in self.rows]
        if not self.tags:
            self.tags = list(range(len(self.rows)))
        if len(self.tags) != len(self.rows):
            raise ValueError("one provenance tag per row is required")
        if len({len(row) for row in self.rows}) > 1:
            raise ValueError("all rows must have the same length")

    @property
    def n_columns(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def subset(self, indices: Sequence[int]) -> "LinearSystem":
        return LinearSystem([self.rows[i] for i in indices], [self.tags[i] for i in indices])

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class PeelResult:
    kept_row_indices: List[int]
    layers: List[List[int]]


def row_basis(rows: Sequence[Sequence]) -> List[int]:
    """Indices of a greedy basis: a row is kept iff it raises the rank"""
    pivots: Dict[int, List[Fraction]] = {}
    kept = []
    for index, row in enumerate(rows):
        reduced = [Fraction(c) for c in row]
        for col, basis in pivots.items():
            factor = reduced[col]
            if factor:
                reduced = [a - factor * b for a, b in zip(reduced, basis)]
        lead = next((col for col, c in enumerate(reduced) if c), None)
        if lead is None:
            continue
        scale = reduced[lead]
        reduced = [c / scale for c in reduced]
        for col, basis in pivots.items():
            factor = basis[lead]
            if factor:
                pivots[col] = [a - factor * b for a, b in zip(basis, reduced)]
        pivots[lead] = reduced
        kept.append(index)
    return kept


def in_span(rows: Sequence[Sequence], vector: Sequence) -> bool:
    return len(row_basis(list(rows) + [vector])) == len(row_basis(rows))


def peel(m: LinearSystem, k: int) -> PeelResult:
    """Up to k+1 disjoint basis layers, each spanning what is left after the previous ones"""
    remaining = list(range(len(m.rows)))
    layers: List[List[int]] = []
    for _ in range(k + 1):
        if not remaining:
            break
        local = row_basis([m.rows[i] for i in remaining])
        if not local:
            break
        layer = [remaining[j] for j in local]
        layers.append(layer)
        taken = set(layer)
        remaining = [i for i in remaining if i not in taken]
    kept = sorted(i for layer in layers for i in layer)
    logger.debug(f"Peeled {len(layers)} layers keeping {len(kept)} of {len(m.rows)} rows")
    return PeelResult(kept, layers)


def reduce_equations(s: LinearSystem, k: int) -> LinearSystem:
    """Keep at most (n+1)(k+1) equations; assignments violating <= k kept ones satisfy the rest"""
    result = peel(s, k)
    return s.subset(result.kept_row_indices)


def evaluate(row: Sequence, assignment: Sequence) -> Fraction:
    """Left-hand side of a row at x, with the homogenising coordinate fixed to 1"""
    return sum((c * x for c, x in zip(row[:-1], assignment)), Fraction(row[-1]))


def violations(system: LinearSystem, assignment: Sequence) -> int:
    return sum(1 for row in system.rows if evaluate(row, assignment) != 0)
