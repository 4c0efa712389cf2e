"""
Paths and default settings for the p-exponent toolkit.

Every numeric default used by the analysis pipeline lives here; the CLI
`RunConfig` and the library functions read their defaults from this module.
Environment overrides are picked up from a local `.env` (python-dotenv).
"""
from pathlib import Path
import logging
import math
import os

from dotenv import load_dotenv

load_dotenv()

# Base paths
BASE_DIR = Path(__file__).parent
OUTPUT_DIR = Path(os.getenv("PEXP_OUTPUT_DIR", str(BASE_DIR / "output")))

# Output subdirs
SIGNALS_DIR = OUTPUT_DIR / "signals"
ANALYSES_DIR = OUTPUT_DIR / "analyses"
REPORTS_DIR = OUTPUT_DIR / "reports"
FIGURES_DIR = OUTPUT_DIR / "figures"

# Signal sampling
DEFAULT_L = 16
MIN_L = 8
DEFAULT_SEED = 0
DEFAULT_X0 = 0.5
COMB_X0 = 0.0
RESOLUTION_SAMPLES = 8  # samples per tooth / local period below which a structure is under-resolved
SINGULARITY_FIT_J_MIN = 8  # finest level where a sampled cusp follows its power law
FOLD_SAMPLES = 4  # chirp samples whose local period is shorter than this are folded
CHIRP_GLOBAL_DEPTH = 6  # global chirp fits start this many levels below the resolution limit
CHIRP_GLOBAL_REACH = 1  # ... and stop this many levels above it
COMB_EDGE_LEVELS = 4  # comb leader fits stop this many levels below L
COMB_FIT_LEVELS = 6

# Wavelet
WAVELET_FAMILY = "db"
DEFAULT_N_VANISHING = int(os.getenv("PEXP_N_VANISHING", "3"))
WAVELET_MODE = "periodization"

# Estimation
DEFAULT_P_GRID = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, math.inf)
DEFAULT_S_LIST = (0.5, 1.0)
DEFAULT_J1 = 3
COARSE_TRIM = 2  # default fit range ends at J - COARSE_TRIM
MIN_FIT_POINTS = 4
ADMISSIBILITY_MARGIN = 2.0  # in units of the slope standard error
P0_BISECTION_STEPS = 12
ADMISSIBILITY_GUARD = 0.5  # warn when an estimate gets this close to N_psi

# Classification
TOL_INVARIANCE = 0.1
TOL_CANONICAL = 0.15
BETA_SIGNIFICANCE = 0.1

# Report format
REPORT_SCHEMA_VERSION = 1

# Logging
LOG_LEVEL = os.getenv("PEXP_LOG_LEVEL", "WARNING")
LOG_FORMAT = "[%(name)s] %(levelname)s %(message)s"


def ensure_dirs():
    """Create all output directories"""
    dirs = [SIGNALS_DIR, ANALYSES_DIR, REPORTS_DIR, FIGURES_DIR]
    for d in dirs:
        d.mkdir(parents=True, exist_ok=True)


def setup_logging(level: str = None):
    """Configure the root logger once (library modules only use module loggers)"""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL).upper(), logging.WARNING),
        format=LOG_FORMAT,
    )


if __name__ == "__main__":
    ensure_dirs()

    print("=== p-exponent toolkit settings ===\n")
    print(f"  Output dir:      {OUTPUT_DIR}")
    print(f"  Wavelet:         {WAVELET_FAMILY}{DEFAULT_N_VANISHING} ({WAVELET_MODE})")
    print(f"  Default L:       {DEFAULT_L}")
    print(f"  p grid:          {', '.join(str(p) for p in DEFAULT_P_GRID)}")
    print(f"  s list:          {', '.join(str(s) for s in DEFAULT_S_LIST)}")
    print(f"  Tolerances:      invariance={TOL_INVARIANCE} canonical={TOL_CANONICAL} beta={BETA_SIGNIFICANCE}")
    print(f"  Log level:       {LOG_LEVEL}")
