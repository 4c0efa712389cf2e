"""
Pointwise p-exponents at x0.

- direct_tp: slope of the local L^p oscillation T^(p)(a, x0) over dyadic radii
- pexp_from_leaders: slope of l^(p)(j, k_j(x0)) over levels
- pexp_ps: same on (p, s)-leaders, guarded by eta(p) > -s p
- pexp_profile: the whole p grid at once, with per-p error slots
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

import config
from src.errors import AdmissibilityError, InvalidParameterError, PExpError
from src.estimation.regression import RegressionFit, fit_log_log, resolve_fit_range
from src.estimation.scaling import ScalingFunction, scaling_function
from src.generators.signals import Signal
from src.leaders.pleaders import LeaderField, leaders_for
from src.wavelets.dwt import WaveletCoeffs, WaveletSpec, forward_dwt

logger = logging.getLogger(__name__)

POLY_MODES = ("zero", "constant")


# ============================================================
# MODELS
# ============================================================

@dataclass
class EstimationConfig:
    n_vanishing: int = config.DEFAULT_N_VANISHING
    J: Optional[int] = None
    fit_range: Optional[Tuple[int, int]] = None          # pointwise regressions
    global_fit_range: Optional[Tuple[int, int]] = None   # eta(p), h_min
    margin: float = config.ADMISSIBILITY_MARGIN
    include_clipped: Optional[bool] = None               # None: only when x0 sits on the clipped edge
    with_direct: bool = False                            # also run direct_tp for p >= 1


@dataclass
class DirectTpResult:
    p: float
    x0: float
    poly_mode: str
    levels: List[int]
    log2_radius: List[float]
    T: List[float]
    fit: RegressionFit

    def to_frame(self) -> pd.DataFrame:
        with np.errstate(divide="ignore"):
            log2_T = np.log2(np.asarray(self.T, dtype=float))
        return pd.DataFrame({"j": self.levels, "log2_radius": self.log2_radius, "log2_T": log2_T})


@dataclass
class PExponentProfile:
    x0: float
    p_grid: List[float]
    h_hat: List[float]
    fits: List[Optional[RegressionFit]]
    admissible: List[bool]
    s: float
    p0: float
    errors: List[Optional[str]]
    fit_range: Tuple[int, int]
    scaling: Optional[ScalingFunction] = None
    leader_tables: Dict[float, pd.DataFrame] = field(default_factory=dict, repr=False)
    direct: Dict[float, DirectTpResult] = field(default_factory=dict, repr=False)
    warnings: List[str] = field(default_factory=list)

    def is_valid(self, i: int) -> bool:
        return bool(self.admissible[i] and self.fits[i] is not None and np.isfinite(self.h_hat[i]))

    def valid_entries(self) -> List[Tuple[float, float, float]]:
        """(p, h_hat, stderr) for admissible, successfully fitted p."""
        return [(p, self.h_hat[i], self.fits[i].stderr)
                for i, p in enumerate(self.p_grid) if self.is_valid(i)]

    def entry(self, p: float) -> Optional[Tuple[float, float]]:
        for q, h, se in self.valid_entries():
            if q == p:
                return h, se
        return None

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for i, p in enumerate(self.p_grid):
            fit = self.fits[i]
            rows.append({
                "p": p,
                "h_hat": self.h_hat[i],
                "stderr": fit.stderr if fit else math.nan,
                "r2": fit.r2 if fit else math.nan,
                "j1": fit.j1 if fit else self.fit_range[0],
                "j2": fit.j2 if fit else self.fit_range[1],
                "admissible": self.admissible[i],
                "n_excluded": fit.n_excluded if fit else 0,
            })
        return pd.DataFrame(rows, columns=["p", "h_hat", "stderr", "r2", "j1", "j2", "admissible", "n_excluded"])

    def to_dict(self) -> Dict:
        return {
            "x0": self.x0,
            "s": self.s,
            "p0": self.p0,
            "fit_range": list(self.fit_range),
            "entries": [
                {
                    "p": p,
                    "h_hat": self.h_hat[i],
                    "stderr": self.fits[i].stderr if self.fits[i] else None,
                    "admissible": self.admissible[i],
                    "valid": self.is_valid(i),
                    "error": self.errors[i],
                }
                for i, p in enumerate(self.p_grid)
            ],
            "warnings": list(self.warnings),
        }


# ============================================================
# DIRECT ESTIMATOR
# ============================================================

def direct_tp(signal: Signal, x0: float, p: float, radii: Optional[Sequence[int]] = None,
              poly_mode: str = "zero") -> DirectTpResult:
    """
    T^(p)(a, x0) = ((1/(2a)) * integral over |x - x0| < a of |X - P|^p)^(1/p)
    as a Riemann sum, for dyadic radii a = 2^(j - L) given by their levels j.
    At x0 = 0 the ball is one-sided (the signals vanish left of the domain).
    """
    if not (p >= 1 and math.isfinite(p)):
        raise InvalidParameterError(f"direct estimator needs finite p >= 1, got {p}")
    if poly_mode not in POLY_MODES:
        raise InvalidParameterError(f"poly_mode must be one of {POLY_MODES}, got {poly_mode}")
    L, N = signal.L, signal.N
    if radii is None:
        j_min = signal.meta.get("direct_fit_j_min", signal.meta.get("fit_j_min", config.DEFAULT_J1))
        j1, j2 = resolve_fit_range(L - 2, j_min)
        radii = range(j1, j2 + 1)
    levels = sorted(int(j) for j in radii)
    one_sided = x0 == 0.0
    reach = 1.0 if one_sided else min(x0, 1.0 - x0)
    for j in levels:
        if 2.0 ** (j - L) > reach:
            raise InvalidParameterError(f"radius 2^{j - L} exceeds the domain around x0={x0}")

    dist = np.abs(signal.x - x0)
    P = 0.0
    if poly_mode == "constant":
        P = float(np.mean(signal.samples[dist < 2.0 ** (levels[0] - L)]))

    dev = np.abs(signal.samples - P) ** p
    T = []
    for j in levels:
        a = 2.0 ** (j - L)
        mass = np.sum(dev[dist < a]) / N
        T.append((mass / (2 * a)) ** (1.0 / p))

    if all(t == 0 for t in T):
        fit = RegressionFit.vanishing(levels[0], levels[-1], [(j, "zero") for j in levels])
    else:
        fit = fit_log_log(levels, T, L, levels[0], levels[-1])
    return DirectTpResult(p, x0, poly_mode, levels, [float(j - L) for j in levels], T, fit)


# ============================================================
# LEADER ESTIMATORS
# ============================================================

def cube_index(x0: float, j: int, N: int) -> int:
    """k with x0 in [k 2^j / N, (k+1) 2^j / N)."""
    n_j = N >> j
    return min(int(math.floor(x0 * n_j)), n_j - 1)


def _guard(fit: RegressionFit, n_vanishing: Optional[int], what: str):
    if n_vanishing and fit.slope >= n_vanishing - config.ADMISSIBILITY_GUARD:
        msg = f"{what}: estimate {fit.slope:.3f} close to N_psi={n_vanishing}, increase the number of vanishing moments"
        logger.warning(msg)
        fit.warnings.append(msg)


def pexp_from_leaders(field_: LeaderField, x0: float, fit_range: Optional[Sequence[int]] = None,
                      include_clipped: Optional[bool] = None) -> RegressionFit:
    if not 0.0 <= x0 < 1.0:
        raise InvalidParameterError(f"x0 must lie in [0, 1), got {x0}")
    if include_clipped is None:
        include_clipped = x0 == 0.0
    if fit_range is None:
        fit_range = resolve_fit_range(field_.J, field_.meta.get("fit_j_min", config.DEFAULT_J1),
                                      field_.meta.get("fit_j_max"))
    j1, j2 = int(fit_range[0]), int(fit_range[1])

    levels, values, excluded = [], [], []
    for j in range(j1, j2 + 1):
        k = cube_index(x0, j, field_.N)
        if field_.clipped_mask(j)[k] and not include_clipped:
            excluded.append((j, "clipped"))
            continue
        levels.append(j)
        values.append(field_.level(j)[k])

    fit = fit_log_log(levels, values, field_.L, j1, j2, excluded=excluded)
    n_vanishing = field_.meta.get("wavelet", {}).get("n_vanishing")
    _guard(fit, n_vanishing, f"h(p={field_.p}, s={field_.s})")
    return fit


def leader_table(field_: LeaderField, x0: float) -> pd.DataFrame:
    """(j, log2_scale, log2_leader) along the cubes containing x0."""
    rows = []
    for j in range(1, field_.J + 1):
        v = field_.level(j)[cube_index(x0, j, field_.N)]
        rows.append({"j": j, "log2_scale": j - field_.L, "log2_leader": np.log2(v) if v > 0 else -np.inf})
    return pd.DataFrame(rows, columns=["j", "log2_scale", "log2_leader"])


def pexp_ps(coeffs: WaveletCoeffs, x0: float, p: float, s: float,
            fit_range: Optional[Sequence[int]] = None,
            scaling: Optional[ScalingFunction] = None,
            include_clipped: Optional[bool] = None) -> RegressionFit:
    """h_{p,s}(x0); raises AdmissibilityError unless eta(p) > -s p."""
    if scaling is None:
        scaling = scaling_function(coeffs, [p])
    if not scaling.admissible_for(p, s):
        i = scaling.index(p)
        raise AdmissibilityError(p, s, scaling.eta[i], scaling.stderr[i])
    field_ = leaders_for(coeffs, p, s)
    return pexp_from_leaders(field_, x0, fit_range, include_clipped)


# ============================================================
# PROFILE
# ============================================================

def pointwise_fit_range(coeffs: WaveletCoeffs, cfg: EstimationConfig) -> Tuple[int, int]:
    return resolve_fit_range(coeffs.J, coeffs.meta.get("fit_j_min", config.DEFAULT_J1),
                             coeffs.meta.get("fit_j_max"), fit_range=cfg.fit_range)


def profile_from_coeffs(coeffs: WaveletCoeffs, x0: float, p_grid: Sequence[float], s: float,
                        scaling: ScalingFunction, cfg: EstimationConfig,
                        signal: Optional[Signal] = None) -> PExponentProfile:
    p_grid = sorted(float(p) for p in p_grid)
    fit_range = pointwise_fit_range(coeffs, cfg)
    h_hat, fits, admissible, errors, tables, direct = [], [], [], [], {}, {}
    warnings: List[str] = []

    for p in p_grid:
        admissible.append(scaling.admissible_for(p, s))
        try:
            field_ = leaders_for(coeffs, p, s)
            fit = pexp_from_leaders(field_, x0, fit_range, cfg.include_clipped)
            tables[p] = leader_table(field_, x0)
        except PExpError as e:
            h_hat.append(math.nan)
            fits.append(None)
            errors.append(e.detail)
            continue
        h_hat.append(fit.slope)
        fits.append(fit)
        errors.append(None)
        warnings.extend(fit.warnings)
        if admissible[-1] and math.isfinite(p) and fit.slope < -1.0 / p - 0.1:
            msg = f"h(p={p}) = {fit.slope:.3f} below the lower bound -1/p"
            logger.warning(msg)
            warnings.append(msg)

        if cfg.with_direct and signal is not None and s == 0 and 1 <= p < math.inf:
            try:
                direct[p] = direct_tp(signal, x0, p, range(fit_range[0], fit_range[1] + 1))
            except PExpError as e:
                logger.info("direct estimator at p=%s skipped: %s", p, e.detail)

    return PExponentProfile(
        x0=x0,
        p_grid=p_grid,
        h_hat=h_hat,
        fits=fits,
        admissible=admissible,
        s=s,
        p0=scaling.p0_estimate,
        errors=errors,
        fit_range=fit_range,
        scaling=scaling,
        leader_tables=tables,
        direct=direct,
        warnings=warnings,
    )


def prepare(signal: Signal, p_grid: Sequence[float], cfg: EstimationConfig) -> Tuple[WaveletCoeffs, ScalingFunction]:
    """DWT and global scaling function shared by every profile of a signal."""
    coeffs = forward_dwt(signal, WaveletSpec(n_vanishing=cfg.n_vanishing), cfg.J)
    scaling = scaling_function(coeffs, p_grid, cfg.global_fit_range, cfg.margin)
    return coeffs, scaling


def pexp_profile(signal: Signal, x0: Optional[float] = None,
                 p_grid: Sequence[float] = config.DEFAULT_P_GRID, s: float = 0.0,
                 cfg: Optional[EstimationConfig] = None) -> PExponentProfile:
    """
    Leader-based profile p -> h_{p,s}(x0) over the grid. Admissibility comes
    from the global scaling function; per-p failures land in `errors`.
    """
    cfg = cfg or EstimationConfig()
    x0 = signal.x0 if x0 is None else x0
    if any(not p > 0 for p in p_grid):
        raise InvalidParameterError(f"p grid must be positive, got {list(p_grid)}")
    if s < 0:
        raise InvalidParameterError(f"s must be >= 0, got {s}")
    coeffs, scaling = prepare(signal, p_grid, cfg)
    return profile_from_coeffs(coeffs, x0, p_grid, s, scaling, cfg, signal)
