"""
Global regularity: structure functions, the wavelet scaling function eta(p),
the uniform Hoelder exponent h_min and the critical exponent p0.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

import config
from src.errors import EstimationError, InvalidParameterError
from src.estimation.regression import RegressionFit, fit_log_log, resolve_fit_range
from src.wavelets.dwt import WaveletCoeffs

logger = logging.getLogger(__name__)


@dataclass
class ScalingFunction:
    p_grid: List[float]
    eta: List[float]
    stderr: List[float]
    fits: List[Optional[RegressionFit]]
    admissible: List[bool]
    p0_estimate: float
    fit_range: Tuple[int, int]
    margin: float = config.ADMISSIBILITY_MARGIN
    hmin: Optional[float] = None
    hmin_fit: Optional[RegressionFit] = None
    errors: Dict[float, str] = field(default_factory=dict)

    def index(self, p: float) -> int:
        for i, q in enumerate(self.p_grid):
            if q == p:
                return i
        raise KeyError(p)

    def eta_at(self, p: float) -> float:
        return self.eta[self.index(p)]

    def admissible_for(self, p: float, s: float = 0.0) -> bool:
        """eta(p) > -s p beyond `margin` standard errors; h_min + s for p = inf."""
        i = self.index(p)
        eta, se = self.eta[i], self.stderr[i]
        if not np.isfinite(eta):
            return False
        if math.isinf(p):
            return eta + s > self.margin * se
        return eta + s * p > self.margin * se

    def any_admissible(self) -> bool:
        return any(self.admissible)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "p": self.p_grid,
            "eta": self.eta,
            "stderr": self.stderr,
            "admissible": self.admissible,
        })

    def to_dict(self) -> Dict:
        return {
            "p_grid": list(self.p_grid),
            "eta": list(self.eta),
            "stderr": list(self.stderr),
            "admissible": list(self.admissible),
            "p0_estimate": self.p0_estimate,
            "hmin": self.hmin,
            "fit_range": list(self.fit_range),
            "margin": self.margin,
            "errors": {str(p): msg for p, msg in self.errors.items()},
        }


# ============================================================
# STRUCTURE FUNCTIONS
# ============================================================

def _interior(coeffs: WaveletCoeffs, j: int, exclude_boundary: bool) -> np.ndarray:
    c = coeffs.level(j)
    return c[~coeffs.boundary_mask(j)] if exclude_boundary else c


def structure_function(coeffs: WaveletCoeffs, p: float, exclude_boundary: bool = True) -> np.ndarray:
    """
    S(j, p) = 2^(j - L) * sum_k |c_{j,k}|^p for j = 1..J (index j - 1).
    Levels without interior coefficients are NaN.
    """
    if not (p > 0 and math.isfinite(p)):
        raise InvalidParameterError(f"p must be a positive finite number, got {p}")
    S = np.full(coeffs.J, np.nan)
    for j in range(1, coeffs.J + 1):
        c = _interior(coeffs, j, exclude_boundary)
        if c.size:
            S[j - 1] = 2.0 ** (j - coeffs.L) * np.sum(np.abs(c) ** p)
    return S


def structure_table(coeffs: WaveletCoeffs, p: float, exclude_boundary: bool = True) -> pd.DataFrame:
    S = structure_function(coeffs, p, exclude_boundary)
    js = np.arange(1, coeffs.J + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        log2_S = np.log2(S)
    return pd.DataFrame({"j": js, "log2_scale": js - coeffs.L, "log2_S": log2_S})


def last_interior_level(coeffs: WaveletCoeffs) -> int:
    """Coarsest level that still has coefficients away from the domain edges."""
    J = 1
    for j in range(1, coeffs.J + 1):
        if (~coeffs.boundary_mask(j)).sum() >= 2:
            J = j
    return J


def global_fit_range(coeffs: WaveletCoeffs, fit_range: Optional[Sequence[int]] = None) -> Tuple[int, int]:
    j_min = coeffs.meta.get("global_fit_j_min", config.DEFAULT_J1)
    j_max = last_interior_level(coeffs)
    if "global_fit_j_max" in coeffs.meta:
        j_max = min(j_max, int(coeffs.meta["global_fit_j_max"]))
    return resolve_fit_range(coeffs.J, j_min, j_max, fit_range)


def _eta_fit(coeffs: WaveletCoeffs, p: float, j1: int, j2: int) -> RegressionFit:
    S = structure_function(coeffs, p)
    return fit_log_log(range(1, coeffs.J + 1), S, coeffs.L, j1, j2)


# ============================================================
# H_MIN
# ============================================================

def hmin_fit(coeffs: WaveletCoeffs, fit_range: Optional[Sequence[int]] = None,
             exclude_boundary: bool = True) -> RegressionFit:
    """Slope of log2 max_k |c_{j,k}| against log2 a_j."""
    j1, j2 = global_fit_range(coeffs, fit_range)
    sups = []
    for j in range(1, coeffs.J + 1):
        c = _interior(coeffs, j, exclude_boundary)
        sups.append(float(np.max(np.abs(c))) if c.size else math.nan)
    return fit_log_log(range(1, coeffs.J + 1), sups, coeffs.L, j1, j2)


def hmin(coeffs: WaveletCoeffs, fit_range: Optional[Sequence[int]] = None) -> float:
    return hmin_fit(coeffs, fit_range).slope


# ============================================================
# SCALING FUNCTION
# ============================================================

def _bisect_p0(coeffs: WaveletCoeffs, lo: float, hi: float, j1: int, j2: int) -> float:
    """eta(lo) > 0 >= eta(hi); eta evaluated directly at each midpoint."""
    for _ in range(config.P0_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        try:
            positive = _eta_fit(coeffs, mid, j1, j2).slope > 0
        except EstimationError:
            break
        if positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _estimate_p0(coeffs: WaveletCoeffs, finite: List[Tuple[float, float]], hmin_value: Optional[float],
                 j1: int, j2: int) -> float:
    if not finite:
        return math.nan
    if finite[0][1] <= 0:
        return 0.0
    for (p_lo, e_lo), (p_hi, e_hi) in zip(finite, finite[1:]):
        if e_lo > 0 >= e_hi:
            return _bisect_p0(coeffs, p_lo, p_hi, j1, j2)
    if hmin_value is None or hmin_value > 0:
        return math.inf
    # positive on the whole finite grid but h_min <= 0: bracket by doubling
    p_lo = finite[-1][0]
    p_hi = 2 * p_lo
    for _ in range(10):
        try:
            if _eta_fit(coeffs, p_hi, j1, j2).slope <= 0:
                return _bisect_p0(coeffs, p_lo, p_hi, j1, j2)
        except EstimationError:
            break
        p_lo, p_hi = p_hi, 2 * p_hi
    return math.inf


def scaling_function(coeffs: WaveletCoeffs, p_grid: Sequence[float] = config.DEFAULT_P_GRID,
                     fit_range: Optional[Sequence[int]] = None,
                     margin: float = config.ADMISSIBILITY_MARGIN) -> ScalingFunction:
    """
    eta(p) for each p of the grid (p = inf maps to h_min), admissibility
    eta(p) > margin * stderr, and p0 refined by bisection at the sign change.
    """
    p_grid = sorted(float(p) for p in p_grid)
    if not p_grid or p_grid[0] <= 0:
        raise InvalidParameterError(f"p grid must be non-empty and positive, got {p_grid}")
    j1, j2 = global_fit_range(coeffs, fit_range)

    h_fit = None
    try:
        h_fit = hmin_fit(coeffs, (j1, j2))
    except EstimationError as e:
        logger.warning("h_min: %s", e.detail)

    eta, stderr, fits, errors = [], [], [], {}
    for p in p_grid:
        try:
            fit = h_fit if math.isinf(p) else _eta_fit(coeffs, p, j1, j2)
            if fit is None:
                raise EstimationError("h_min unavailable")
        except EstimationError as e:
            errors[p] = e.detail
            fits.append(None)
            eta.append(math.nan)
            stderr.append(math.nan)
            continue
        for j, why in fit.excluded:
            logger.info("eta(%s): level %d excluded (%s)", p, j, why)
        fits.append(fit)
        eta.append(fit.slope)
        stderr.append(fit.stderr)

    if len(errors) == len(p_grid):
        raise EstimationError(f"no scaling exponent could be fitted on [{j1}, {j2}]: {errors}")

    admissible = [bool(np.isfinite(e) and e > margin * se) for e, se in zip(eta, stderr)]
    finite = [(p, e) for p, e in zip(p_grid, eta) if math.isfinite(p) and np.isfinite(e)]
    p0 = _estimate_p0(coeffs, finite, h_fit.slope if h_fit else None, j1, j2)

    return ScalingFunction(
        p_grid=p_grid,
        eta=eta,
        stderr=stderr,
        fits=fits,
        admissible=admissible,
        p0_estimate=p0,
        fit_range=(j1, j2),
        margin=margin,
        hmin=h_fit.slope if h_fit else None,
        hmin_fit=h_fit,
        errors=errors,
    )
