#!/usr/bin/env python3
"""
wTDS Kernelization Toolkit - Main Entry Point
"""

import argparse
import logging
import os
import sys
from typing import Callable, Dict, List, Optional

import colorlog

from config import Config
from handlers.kernel_handler import KernelHandler
from handlers.solve_handler import SolveHandler
from handlers.verify_handler import VerifyHandler
from utils.exceptions import ConfigurationError

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def setup_logging(quiet: bool = False) -> None:
    """Configure the root logger once: colored stderr plus a plain log file"""
    os.makedirs(Config.LOGS_PATH, exist_ok=True)
    stream = colorlog.StreamHandler()
    stream.setFormatter(colorlog.ColoredFormatter('%(log_color)s' + LOG_FORMAT))
    stream.setLevel(logging.WARNING if quiet else Config.LOG_LEVEL)
    file_handler = logging.FileHandler(os.path.join(Config.LOGS_PATH, Config.LOG_FILE))
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logging.basicConfig(level=Config.LOG_LEVEL, handlers=[file_handler, stream], force=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wtds",
        description="Polynomial kernels for Weighted Tree Deletion Set",
        epilog=Config.HELP_MESSAGE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kernel = sub.add_parser("kernelize", help="shrink an instance to a kernel")
    kernel.add_argument("input")
    kernel.add_argument("output", nargs="?")
    kernel.add_argument("--report")

    solve = sub.add_parser("solve", help="exact answer by exhaustive search")
    solve.add_argument("input")
    solve.add_argument("--oracle-limit", type=int)

    verify = sub.add_parser("verify", help="kernel vs. oracle equivalence campaign")
    verify.add_argument("input", nargs="?")
    verify.add_argument("--samples", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--max-n", type=int)
    verify.add_argument("--max-k", type=int)
    verify.add_argument("--max-weight", type=int)
    verify.add_argument("--oracle-limit", type=int)
    verify.add_argument("--workers", type=int)
    verify.add_argument("--report")

    gen = sub.add_parser("gen", help="write generated instance files")
    gen.add_argument("family")
    gen.add_argument("count", type=int)
    gen.add_argument("out_dir")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--min-n", type=int, default=4)
    gen.add_argument("--max-n", type=int)
    gen.add_argument("--max-k", type=int)
    gen.add_argument("--max-weight", type=int)
    gen.add_argument("--edge-p", type=float, default=0.3)

    for command in (kernel, solve, verify, gen):
        command.add_argument("--quiet", action="store_true", help="only warnings and errors on stderr")
    return parser


def setup_handlers(args: argparse.Namespace) -> Dict[str, Callable[[], int]]:
    """Map each subcommand to its handler call"""
    kernel_handler = KernelHandler()
    solve_handler = SolveHandler()
    verify_handler = VerifyHandler(workers=getattr(args, "workers", None))
    return {
        "kernelize": lambda: kernel_handler.cmd_kernelize(args.input, args.output, args.report),
        "solve": lambda: solve_handler.cmd_solve(args.input, args.oracle_limit),
        "verify": lambda: verify_handler.cmd_verify(
            args.input, samples=args.samples, seed=args.seed, max_n=args.max_n,
            max_k=args.max_k, max_weight=args.max_weight,
            oracle_limit=args.oracle_limit, report_path=args.report),
        "gen": lambda: verify_handler.cmd_gen(
            args.family, args.count, args.out_dir, seed=args.seed, n_min=args.min_n,
            n_max=args.max_n, max_k=args.max_k, max_weight=args.max_weight, edge_p=args.edge_p),
    }


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.quiet)
    try:
        return setup_handlers(args)[args.command]()
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        return 3
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
