"""
Log-log regressions over a level range.

Every exponent in the package is an OLS slope of log2(value) against
log2(a_j) = j - L. Non-finite or non-positive values are dropped and listed
in `excluded` with a reason.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

import config
from src.errors import EstimationError, InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass
class RegressionFit:
    slope: float
    intercept: float
    stderr: float
    r2: float
    j1: int
    j2: int
    points: List[Tuple[float, float]] = field(default_factory=list)
    excluded: List[Tuple[int, str]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_excluded(self) -> int:
        return len(self.excluded)

    @classmethod
    def vanishing(cls, j1: int, j2: int, excluded: List[Tuple[int, str]]) -> "RegressionFit":
        """Sentinel for a quantity that is zero at every scale: exponent +inf."""
        return cls(math.inf, math.nan, 0.0, math.nan, j1, j2, [], excluded,
                   ["all values vanish: exponent reported as +inf"])

    def to_dict(self) -> Dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "stderr": self.stderr,
            "r2": self.r2,
            "j1": self.j1,
            "j2": self.j2,
            "points": [list(pt) for pt in self.points],
            "excluded": [list(e) for e in self.excluded],
            "warnings": list(self.warnings),
        }


def resolve_fit_range(J: int, j_min: int = config.DEFAULT_J1, j_max: Optional[int] = None,
                      fit_range: Optional[Sequence[int]] = None) -> Tuple[int, int]:
    """
    Default range [max(j1, j_min), J - 2]; widened toward J (then toward the
    finest level) until it holds MIN_FIT_POINTS levels.
    """
    if fit_range is not None:
        j1, j2 = int(fit_range[0]), int(fit_range[1])
        if not 1 <= j1 < j2 <= J:
            raise EstimationError(f"fit range [{j1}, {j2}] outside available levels [1, {J}]")
        return j1, j2

    top = J if j_max is None else min(J, j_max)
    j1 = max(config.DEFAULT_J1, j_min)
    j2 = min(top, J - config.COARSE_TRIM)
    if j2 - j1 + 1 < config.MIN_FIT_POINTS:
        j2 = min(top, j1 + config.MIN_FIT_POINTS - 1)
    if j2 - j1 + 1 < config.MIN_FIT_POINTS:
        j1 = max(1, j2 - config.MIN_FIT_POINTS + 1)
    if j1 >= j2:
        raise EstimationError(f"empty fit range: J={J}, j_min={j_min}")
    return j1, j2


def fit_log_log(levels: Sequence[int], values: Sequence[float], L: int, j1: int, j2: int,
                excluded: Optional[List[Tuple[int, str]]] = None,
                min_points: int = config.MIN_FIT_POINTS) -> RegressionFit:
    """Regress log2(values) on j - L over levels in [j1, j2]."""
    if j1 >= j2:
        raise InvalidParameterError(f"need j1 < j2, got [{j1}, {j2}]")
    excluded = list(excluded or [])
    xs, ys = [], []
    for j, v in zip(levels, values):
        if not j1 <= j <= j2:
            continue
        if v is None or not np.isfinite(v):
            excluded.append((int(j), "non-finite"))
        elif v <= 0:
            excluded.append((int(j), "zero"))
        else:
            xs.append(float(j - L))
            ys.append(float(np.log2(v)))

    if len(xs) < min_points:
        raise EstimationError(
            f"only {len(xs)} usable levels in [{j1}, {j2}] (need {min_points}); excluded: {excluded}")

    res = linregress(xs, ys)
    r2 = float(res.rvalue) ** 2 if np.isfinite(res.rvalue) else math.nan
    return RegressionFit(
        slope=float(res.slope),
        intercept=float(res.intercept),
        stderr=float(res.stderr),
        r2=r2,
        j1=j1,
        j2=j2,
        points=list(zip(xs, ys)),
        excluded=excluded,
    )
