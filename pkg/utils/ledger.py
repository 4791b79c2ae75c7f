"""
Bound Ledger - Records every asserted size bound with its evaluated sides
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List

from utils.exceptions import InvariantViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    lhs: int
    rhs: int

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> Dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "satisfied": self.satisfied}


class BoundLedger:
    """Ordered record of `lhs <= rhs` checks; a failing check raises immediately"""

    def __init__(self):
        self.entries: List[BoundEntry] = []

    def check(self, name: str, lhs: int, rhs: int) -> None:
        entry = BoundEntry(name, int(lhs), int(rhs))
        self.entries.append(entry)
        if not entry.satisfied:
            logger.error(f"Bound violated: {name} ({lhs} > {rhs})")
            raise InvariantViolation(name, lhs, rhs)
        logger.debug(f"Bound ok: {name} ({lhs} <= {rhs})")

    def require(self, name: str, holds: bool) -> None:
        """Structural claim recorded as 0 <= 0 when it holds"""
        self.check(name, 0 if holds else 1, 0)

    def all_satisfied(self) -> bool:
        return all(entry.satisfied for entry in self.entries)

    def to_list(self) -> List[Dict]:
        return [entry.to_dict() for entry in self.entries]

    def __iter__(self) -> Iterator[BoundEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)
