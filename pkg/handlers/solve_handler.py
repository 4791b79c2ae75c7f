"""
Solve Handler - Handles the exact solve command
"""

import logging
from typing import Optional

from utils.decorators import exit_on_error, log_command
from utils.instance_io import read_instance
from utils.oracle import exact_tds

logger = logging.getLogger(__name__)


class SolveHandler:
    @exit_on_error
    @log_command
    def cmd_solve(self, input_path: str, oracle_limit: Optional[int] = None) -> int:
        """Answer an instance exactly; exit 0 on YES, 1 on NO"""
        inst = read_instance(input_path)
        answer = exact_tds(inst, limit=oracle_limit)
        if answer.is_yes:
            deleted = " ".join(str(v) for v in sorted(answer.witness.deleted))
            print(f"YES weight={answer.optimum_weight} delete={{{deleted}}}")
            return 0
        print("NO")
        return 1
