"""
CNMF Toolkit - Configuration

Ambient settings come from environment variables, optionally loaded from a
.env file at the project root. Flags passed on the command line always win.

  CNMF_LOG_LEVEL              log level for the CLI and the server
  CNMF_TOEPLITZ_MAX_ENTRIES   N*T cap for the Toeplitz reconstruction oracle
  CNMF_ORACLE_MAX_DENSE_ENTRIES  cap on N*T*K*T, the size of the dense operator both oracles build
  CNMF_ENUMERATE_MAX_VARS     cap on M for the exhaustive NNLS oracle
  CNMF_BENCH_WORKERS          concurrent fits in `cnmf bench`
  CNMF_DEFAULT_ALGORITHM      default solver for `cnmf fit`
  CNMF_API_HOST / CNMF_API_PORT  bind address for `cnmf serve`

None of these change the numbers a fit produces.
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

env_path = Path(__file__).parent.parent / ".env"
if env_path.exists():
    load_dotenv(env_path)

LOG_LEVEL = os.getenv("CNMF_LOG_LEVEL", "INFO").upper()

TOEPLITZ_MAX_ENTRIES = int(os.getenv("CNMF_TOEPLITZ_MAX_ENTRIES", "10000"))
ORACLE_MAX_DENSE_ENTRIES = int(os.getenv("CNMF_ORACLE_MAX_DENSE_ENTRIES", "20000000"))
ENUMERATE_MAX_VARS = int(os.getenv("CNMF_ENUMERATE_MAX_VARS", "12"))

BENCH_WORKERS = int(os.getenv("CNMF_BENCH_WORKERS", "1"))
DEFAULT_ALGORITHM = os.getenv("CNMF_DEFAULT_ALGORITHM", "hals").lower()

API_HOST = os.getenv("CNMF_API_HOST", "127.0.0.1")
API_PORT = int(os.getenv("CNMF_API_PORT", "8000"))

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def setup_logging(level: str | None = None) -> None:
    """Configure root logging on stderr; stdout stays reserved for results."""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO),
        format=LOG_FORMAT,
        force=True,
    )
