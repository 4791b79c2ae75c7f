"""
Configuration file for the wTDS kernelization toolkit
"""

import os

from dotenv import load_dotenv

from utils.exceptions import ConfigurationError

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


class Config:
    # Exhaustive solver limits (vertex counts)
    ORACLE_LIMIT = _env_int("TDS_ORACLE_LIMIT", 15)
    PACKING_LIMIT = _env_int("TDS_PACKING_LIMIT", 9)
    COVER_LIMIT = _env_int("TDS_COVER_LIMIT", 12)

    # Equivalence campaign defaults
    VERIFY_SAMPLES = _env_int("TDS_VERIFY_SAMPLES", 2000)
    VERIFY_MAX_N = _env_int("TDS_VERIFY_MAX_N", 12)
    VERIFY_MAX_K = _env_int("TDS_VERIFY_MAX_K", 3)
    VERIFY_MAX_WEIGHT = _env_int("TDS_VERIFY_MAX_WEIGHT", 3)
    DEFAULT_SEED = _env_int("TDS_SEED", 0)
    WORKERS = _env_int("TDS_WORKERS", os.cpu_count() or 1)

    # Logging
    LOGS_PATH = os.getenv("TDS_LOGS_PATH", "./logs")
    LOG_LEVEL = os.getenv("TDS_LOG_LEVEL", "INFO").upper()
    LOG_FILE = "wtds.log"

    HELP_MESSAGE = """
Commands:
  kernelize INPUT [OUTPUT] [--report PATH]   shrink an instance to an O(k^4) kernel
  solve INPUT [--oracle-limit N]             exact answer by exhaustive search
  verify [INPUT] [--samples N --seed S ...]  kernel vs. oracle equivalence campaign
  gen FAMILY COUNT OUT_DIR [--seed S ...]    write generated instance files

Exit codes:
  kernelize  0 kernel written, 1 decided during reduction, 2 parse error
  solve      0 YES, 1 NO, 2 parse error, 3 over the oracle limit
  verify     0 no disagreements, 1 disagreements found, 3 configuration error
  any        4 a proven bound failed at runtime
"""
