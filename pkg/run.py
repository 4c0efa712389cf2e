#!/usr/bin/env python
"""
Run the p-exponent toolkit CLI (settings and .env are read by config.py).

Usage:
    python run.py gen cusp --alpha 0.6
    python run.py analyze chirp --alpha -0.3 --beta 1
    python run.py classify comb --alpha -0.2 --gamma 3 --L 18

Or as a module:
    python -m cli.main classify wgn --seed 7
"""

import sys
from pathlib import Path

# Ensure project root is in path
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from cli.main import main


if __name__ == "__main__":
    sys.exit(main())
