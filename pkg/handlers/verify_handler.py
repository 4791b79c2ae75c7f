"""
Verify Handler - Handles the equivalence campaign and instance generation
"""

import asyncio
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import aiofiles

from config import Config
from utils.decorators import exit_on_error, log_command
from utils.exceptions import ConfigurationError, WtdsError
from utils.generators import GenSpec, generate, generate_one
from utils.graph_core import Instance
from utils.instance_io import read_instance, serialize_instance, write_instance
from utils.kernel_pipeline import kernelize
from utils.oracle import exact_tds

logger = logging.getLogger(__name__)

CAMPAIGN_MIX = ("random", "planted", "random", "theta", "double", "butterfly", "planted", "random")


@dataclass(frozen=True)
class CampaignTask:
    index: int
    spec: GenSpec
    oracle_limit: int


def campaign_spec(index: int, seed: int, max_n: int, max_k: int, max_weight: int) -> GenSpec:
    family = CAMPAIGN_MIX[index % len(CAMPAIGN_MIX)]
    return GenSpec(family=family, n_min=min(4, max_n), n_max=max_n,
                   edge_p=0.15 + 0.05 * (index % 5), double_p=0.1,
                   w_max=max_weight, k_min=0, k_max=max_k, seed=seed)


def check_instance(inst: Instance, index: int, family: str, oracle_limit: int,
                   planted_weight: Optional[int] = None) -> Dict:
    """Kernelize one instance and compare exhaustive answers on input and kernel"""
    result = {"index": index, "family": family, "n": inst.n, "k": inst.k}
    try:
        expected = exact_tds(inst, limit=oracle_limit).decision
        report = kernelize(inst)
        if report.decided is not None:
            got = report.decided
        else:
            got = exact_tds(report.kernel, limit=oracle_limit).decision
        result.update(expected=expected.value, got=got.value, status=report.status,
                      kernel_n=report.kernel.n, bounds=len(report.bounds),
                      agree=expected == got)
        if planted_weight is not None and planted_weight <= inst.k and expected.value == "NO":
            result["agree"] = False
            result["planted_failure"] = True
    except WtdsError as e:
        result["error"] = f"{type(e).__name__}: {e}"
        result["agree"] = False
    if not result["agree"]:
        result["instance"] = serialize_instance(inst)
    return result


def check_sample(task: CampaignTask) -> Dict:
    generated = generate_one(task.spec, task.index)
    return check_instance(generated.instance, task.index, generated.family,
                          task.oracle_limit, generated.planted_weight)


def summarize(results: List[Dict], settings: Dict) -> Dict:
    families: Dict[str, int] = {}
    statuses: Dict[str, int] = {}
    for r in results:
        families[r["family"]] = families.get(r["family"], 0) + 1
        if "status" in r:
            statuses[r["status"]] = statuses.get(r["status"], 0) + 1
    failures = [r for r in results if not r["agree"]]
    return {
        "config": settings,
        "samples": len(results),
        "agreements": len(results) - len(failures),
        "disagreements": [r for r in failures if "error" not in r],
        "errors": [r for r in failures if "error" in r],
        "families": families,
        "outcomes": statuses,
        "max_kernel_n": max((r.get("kernel_n", 0) for r in results), default=0),
        "bounds_checked": sum(r.get("bounds", 0) for r in results),
    }


class VerifyHandler:
    def __init__(self, workers: Optional[int] = None):
        self.workers = Config.WORKERS if workers is None else workers

    async def _run_tasks(self, tasks: List[CampaignTask]) -> List[Dict]:
        if self.workers <= 1:
            return [check_sample(task) for task in tasks]
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            futures = [loop.run_in_executor(pool, check_sample, task) for task in tasks]
            return await asyncio.gather(*futures)

    async def _campaign(self, tasks: List[CampaignTask], settings: Dict,
                        report_path: Optional[str]) -> Dict:
        results = await self._run_tasks(tasks)
        summary = summarize(results, settings)
        if report_path:
            Path(report_path).parent.mkdir(parents=True, exist_ok=True)
            async with aiofiles.open(report_path, "w") as f:
                await f.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
            logger.info(f"Campaign report written to {report_path}")
        return summary

    @exit_on_error
    @log_command
    def cmd_verify(self, input_path: Optional[str] = None, samples: Optional[int] = None,
                   seed: Optional[int] = None, max_n: Optional[int] = None,
                   max_k: Optional[int] = None, max_weight: Optional[int] = None,
                   oracle_limit: Optional[int] = None, report_path: Optional[str] = None) -> int:
        """Run the kernel/oracle equivalence campaign, or check a single file"""
        samples = Config.VERIFY_SAMPLES if samples is None else samples
        seed = Config.DEFAULT_SEED if seed is None else seed
        max_n = Config.VERIFY_MAX_N if max_n is None else max_n
        max_k = Config.VERIFY_MAX_K if max_k is None else max_k
        max_weight = Config.VERIFY_MAX_WEIGHT if max_weight is None else max_weight
        limit = Config.ORACLE_LIMIT if oracle_limit is None else oracle_limit

        if max_n > limit:
            raise ConfigurationError(f"--max-n {max_n} exceeds the oracle limit {limit}")
        if max_n < 1 or samples < 0 or max_k < 0 or max_weight < 1:
            raise ConfigurationError("campaign sizes must be positive")

        if input_path:
            result = check_instance(read_instance(input_path), 0, Path(input_path).name, limit)
            print(f"{'✅' if result['agree'] else '❌'} {input_path}: "
                  f"input {result.get('expected', '?')}, kernel {result.get('got', '?')}")
            return 0 if result["agree"] else 1

        settings = {"samples": samples, "seed": seed, "max_n": max_n, "max_k": max_k,
                    "max_weight": max_weight, "oracle_limit": limit}
        tasks = [CampaignTask(i, campaign_spec(i, seed, max_n, max_k, max_weight), limit)
                 for i in range(samples)]
        logger.info(f"Starting campaign of {samples} instances on {self.workers} workers")
        summary = asyncio.run(self._campaign(tasks, settings, report_path))

        bad = len(summary["disagreements"]) + len(summary["errors"])
        for failure in summary["disagreements"] + summary["errors"]:
            logger.error(f"Instance {failure['index']} ({failure['family']}) failed: "
                         f"{failure.get('error') or (failure['expected'], failure['got'])}")
        print(f"{'✅' if not bad else '❌'} {summary['agreements']}/{summary['samples']} agree, "
              f"{len(summary['disagreements'])} disagreements, {len(summary['errors'])} errors, "
              f"largest kernel {summary['max_kernel_n']} vertices")
        return 0 if not bad else 1

    @exit_on_error
    @log_command
    def cmd_gen(self, family: str, count: int, out_dir: str, seed: Optional[int] = None,
                n_min: int = 4, n_max: Optional[int] = None, max_k: Optional[int] = None,
                max_weight: Optional[int] = None, edge_p: float = 0.3) -> int:
        """Write generated instances as inst_0000.wtds, inst_0001.wtds, ..."""
        try:
            spec = GenSpec(family=family,
                           n_min=n_min,
                           n_max=Config.VERIFY_MAX_N if n_max is None else n_max,
                           edge_p=edge_p,
                           w_max=Config.VERIFY_MAX_WEIGHT if max_weight is None else max_weight,
                           k_max=Config.VERIFY_MAX_K if max_k is None else max_k,
                           seed=Config.DEFAULT_SEED if seed is None else seed)
        except ValueError as e:
            raise ConfigurationError(str(e))

        for generated in generate(spec, count):
            comments = [f"family {generated.family} seed {spec.seed} index {generated.index}"]
            if generated.planted is not None:
                comments.append(f"planted weight {generated.planted_weight}")
            write_instance(generated.instance, Path(out_dir) / f"inst_{generated.index:04d}.wtds", comments)
        print(f"✅ Wrote {count} {family} instances to {out_dir}")
        return 0
