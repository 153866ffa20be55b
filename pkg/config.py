"""Configuration settings for the configuration-space cohomology engine."""

import os
from typing import Dict

from dotenv import load_dotenv

load_dotenv()

# Parallelism
THREADS = max(1, int(os.getenv("CONFRING_THREADS", "4")))

# Progress messages on stderr
VERBOSE = os.getenv("CONFRING_VERBOSE", "0").lower() in ("1", "true", "yes")

# CLI defaults
DEFAULT_N = int(os.getenv("CONFRING_DEFAULT_N", "3"))
DEFAULT_M = int(os.getenv("CONFRING_DEFAULT_M", "2"))
DEFAULT_K = int(os.getenv("CONFRING_DEFAULT_K", "3"))
DEFAULT_S = int(os.getenv("CONFRING_DEFAULT_S", "2"))
DEFAULT_COEFF = os.getenv("CONFRING_COEFF", "q")
DEFAULT_FORMAT = os.getenv("CONFRING_FORMAT", "table")
DEFAULT_SEED = int(os.getenv("CONFRING_SEED", "0"))

# Budgets for the zero-divisor computations
TENSOR_BUDGET = int(os.getenv("CONFRING_TENSOR_BUDGET", "20000"))
EXACT_TENSOR_BUDGET = int(os.getenv("CONFRING_EXACT_TENSOR_BUDGET", "4096"))
SEARCH_NODE_BUDGET = int(os.getenv("CONFRING_SEARCH_NODES", "200000"))
MAX_TC_S = int(os.getenv("CONFRING_MAX_S", "3"))
MAX_TC_M = int(os.getenv("CONFRING_MAX_M", "3"))

# Sampled consistency checks
ASSOCIATIVITY_TRIALS = int(os.getenv("CONFRING_ASSOC_TRIALS", "1000"))
ACTION_SAMPLES = int(os.getenv("CONFRING_ACTION_SAMPLES", "100"))

# API Settings
API_HOST = os.getenv("CONFRING_API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("CONFRING_API_PORT", "8000"))

# Coefficient mode labels accepted on the command line
COEFFICIENT_LABELS: Dict[str, str] = {
    "q": "Q",
    "f2": "F2",
    "f3": "F3",
    "f5": "F5",
    "f7": "F7",
    "z": "Z",
}

OUTPUT_FORMATS = ("json", "table")

# Exit codes of the command-line front-end
EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# Human-readable space labels used in reports
SPACE_LABELS: Dict[str, str] = {
    "orbit": "Conf_Z2(R^n-0,{k})",
    "arnold": "Conf(R^n,{k})",
    "sphere-orbit": "Conf_Z2(S^n,{k})",
    "rpn": "Conf(RP^n,{k})",
    "rpn-punctured": "Conf(RP^n-*,{k})",
}

# Prime fields probed for odd torsion in the comparison reports
TORSION_PROBE_PRIMES = (3, 5, 7)
