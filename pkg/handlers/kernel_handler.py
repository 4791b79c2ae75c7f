"""
Kernel Handler - Handles the kernelize command
"""

import json
import logging
from pathlib import Path
from typing import Optional

from utils.decorators import exit_on_error, log_command
from utils.instance_io import read_instance, write_instance
from utils.kernel_pipeline import kernelize

logger = logging.getLogger(__name__)

EXIT_KERNEL = 0
EXIT_DECIDED = 1


class KernelHandler:
    @exit_on_error
    @log_command
    def cmd_kernelize(self, input_path: str, output_path: Optional[str] = None,
                      report_path: Optional[str] = None) -> int:
        """Kernelize one instance file"""
        source = read_instance(input_path)
        report = kernelize(source)

        if report.decided is None:
            target = output_path or str(Path(input_path).with_suffix(".kernel.wtds"))
            write_instance(report.kernel, target,
                           comments=[f"kernel of {Path(input_path).name}"], id_map=True)
        if report_path:
            payload = report.to_dict(source)
            Path(report_path).parent.mkdir(parents=True, exist_ok=True)
            Path(report_path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
            logger.info(f"Report written to {report_path}")

        if report.decided is not None:
            print(f"✅ Decided during reduction: {report.decided.value}")
            return EXIT_DECIDED
        sizes = report.sizes()
        print(f"✅ Kernel: n={sizes['n']} m={sizes['m']} k={sizes['k']} "
              f"(input n={source.n} m={source.graph.edge_count()}), "
              f"{len(report.bounds)} bounds checked")
        return EXIT_KERNEL
