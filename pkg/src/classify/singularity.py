"""
Singularity classification from p-exponent profiles.

    inadmissible          no p with eta(p) > 0
    canonical             h_{p,s} = h_p + s for every tested s, p -> h_p constant
    oscillating_balanced  not canonical, p -> h_p constant, beta_hat significant
    oscillating_lacunary  not canonical, p -> h_p not constant
    indeterminate         too few valid estimates to decide
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

import config
from src.errors import EstimationError, PExpError
from src.estimation.pexp import EstimationConfig, PExponentProfile, prepare, profile_from_coeffs
from src.generators.signals import Signal

logger = logging.getLogger(__name__)


# =============================================================================
# LABELS
# =============================================================================

LABELS = {
    "canonical": {
        "description": "shift after integration equals s at every p",
        "rule": "h_{p,s} - h_p = s (within tol_canonical)",
    },
    "oscillating_balanced": {
        "description": "oscillating singularity with a p-invariant profile",
        "rule": "not canonical, p-invariant, beta_hat > beta_significance",
    },
    "oscillating_lacunary": {
        "description": "oscillating singularity whose p-exponents vary with p",
        "rule": "not canonical, not p-invariant",
    },
    "inadmissible": {
        "description": "no p with eta(p) > 0: p-exponents are not defined",
        "rule": "eta(p) <= margin * stderr on the whole grid",
    },
    "indeterminate": {
        "description": "estimates too sparse or inconsistent to decide",
        "rule": "fallback",
    },
}


@dataclass
class ClassifyConfig:
    p_grid: Sequence[float] = config.DEFAULT_P_GRID
    s_list: Sequence[float] = config.DEFAULT_S_LIST
    tol_invariance: float = config.TOL_INVARIANCE
    tol_canonical: float = config.TOL_CANONICAL
    beta_significance: float = config.BETA_SIGNIFICANCE
    estimation: EstimationConfig = field(default_factory=EstimationConfig)

    def tolerances(self) -> Dict:
        return {
            "tol_invariance": self.tol_invariance,
            "tol_canonical": self.tol_canonical,
            "beta_significance": self.beta_significance,
            "margin": self.estimation.margin,
        }


@dataclass
class SingularityReport:
    label: str
    x0: float
    p_invariant: bool = False
    canonical: Optional[bool] = None
    beta_hat: float = 0.0
    beta_by_s: Dict[float, float] = field(default_factory=dict)
    profile_s0: Optional[PExponentProfile] = None
    profiles_s: Dict[float, PExponentProfile] = field(default_factory=dict)
    tolerances: Dict = field(default_factory=dict)
    reasons: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label: {self.label}")

    def check_invariants(self) -> bool:
        if self.label == "canonical":
            return self.p_invariant
        if self.label == "oscillating_balanced":
            return self.p_invariant and self.beta_hat > self.tolerances.get("beta_significance", 0.0)
        if self.label == "oscillating_lacunary":
            return not self.p_invariant
        return True

    def to_dict(self) -> Dict:
        return {
            "schema_version": config.REPORT_SCHEMA_VERSION,
            "label": self.label,
            "description": LABELS[self.label]["description"],
            "matched_by": LABELS[self.label]["rule"],
            "x0": self.x0,
            "p_invariant": self.p_invariant,
            "canonical": self.canonical,
            "beta_hat": self.beta_hat,
            "beta_by_s": {str(s): b for s, b in self.beta_by_s.items()},
            "tolerances": self.tolerances,
            "reasons": list(self.reasons),
            "scaling": self.profile_s0.scaling.to_dict() if self.profile_s0 and self.profile_s0.scaling else None,
            "evidence": {
                "s0": self.profile_s0.to_dict() if self.profile_s0 else None,
                "s": {str(s): prof.to_dict() for s, prof in self.profiles_s.items()},
            },
        }


# =============================================================================
# TESTS ON PROFILES
# =============================================================================

def check_p_invariant(profile: PExponentProfile, tol: float = config.TOL_INVARIANCE) -> bool:
    entries = profile.valid_entries()
    if len(entries) < 3:
        raise EstimationError(f"p-invariance needs 3 valid entries, got {len(entries)}")
    hs = [h for _, h, _ in entries]
    max_se = max(se for _, _, se in entries)
    return max(hs) - min(hs) <= tol + 2 * max_se


def _joint_shifts(profile_s0: PExponentProfile, profile_s: PExponentProfile) -> List[float]:
    base = {p: h for p, h, _ in profile_s0.valid_entries()}
    return [h - base[p] for p, h, _ in profile_s.valid_entries() if p in base]


def check_canonical(profile_s0: PExponentProfile, profiles_s: Sequence[PExponentProfile],
                    tol: float = config.TOL_CANONICAL) -> bool:
    if not any(prof.s > 0 for prof in profiles_s):
        raise EstimationError("canonical test needs at least one s > 0")
    n_joint = 0
    for prof in profiles_s:
        for shift in _joint_shifts(profile_s0, prof):
            n_joint += 1
            if abs(shift - prof.s) > tol:
                return False
    if n_joint == 0:
        raise EstimationError("no p is valid both before and after integration")
    return True


def oscillation_exponent(profile_s0: PExponentProfile, profile_s: PExponentProfile, s: float) -> float:
    """Median over jointly valid p of (h_{p,s} - h_p)/s - 1, floored at 0."""
    shifts = _joint_shifts(profile_s0, profile_s)
    if not shifts:
        raise EstimationError(f"no jointly valid p for s={s}")
    return max(0.0, float(np.median([d / s - 1.0 for d in shifts])))


# =============================================================================
# PIPELINE
# =============================================================================

def classify_singularity(signal: Signal, x0: Optional[float] = None,
                         cfg: Optional[ClassifyConfig] = None) -> SingularityReport:
    cfg = cfg or ClassifyConfig()
    x0 = signal.x0 if x0 is None else x0
    report = SingularityReport(label="indeterminate", x0=x0, tolerances=cfg.tolerances())

    try:
        coeffs, scaling = prepare(signal, cfg.p_grid, cfg.estimation)
    except PExpError as e:
        report.reasons.append(f"scaling function: {e.detail}")
        return report

    profile0 = profile_from_coeffs(coeffs, x0, cfg.p_grid, 0.0, scaling, cfg.estimation)
    report.profile_s0 = profile0
    if not scaling.any_admissible():
        report.label = "inadmissible"
        report.reasons.append("eta(p) not significantly positive for any p of the grid")
        return report

    s_list = [s for s in cfg.s_list if s > 0]
    for s in s_list:
        report.profiles_s[s] = profile_from_coeffs(coeffs, x0, cfg.p_grid, s, scaling, cfg.estimation)

    try:
        report.p_invariant = check_p_invariant(profile0, cfg.tol_invariance)
    except EstimationError as e:
        report.reasons.append(e.detail)
        return report

    try:
        report.canonical = check_canonical(profile0, list(report.profiles_s.values()), cfg.tol_canonical)
    except EstimationError as e:
        report.reasons.append(e.detail)
        return report

    for s, prof in report.profiles_s.items():
        try:
            report.beta_by_s[s] = oscillation_exponent(profile0, prof, s)
        except EstimationError as e:
            report.reasons.append(e.detail)
    if report.beta_by_s:
        report.beta_hat = float(np.median(list(report.beta_by_s.values())))

    if report.canonical and report.p_invariant:
        report.label = "canonical"
        report.beta_hat = 0.0
    elif not report.p_invariant:
        report.label = "oscillating_lacunary"
    elif report.beta_hat > cfg.beta_significance:
        report.label = "oscillating_balanced"
    else:
        report.reasons.append(
            f"shift departs from s but beta_hat={report.beta_hat:.3f} <= {cfg.beta_significance}")

    logger.info("x0=%s: %s (beta_hat=%.3f)", x0, report.label, report.beta_hat)
    return report
