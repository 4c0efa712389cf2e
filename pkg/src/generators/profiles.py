"""
Closed-form p-exponent profiles of the reference signals.

`theoretical_profile(meta)` reads the meta dict written by a generator and
returns the map p -> h_p at the singular point, the critical exponent p0 and
the oscillation exponent. Used as golden values by the tests and echoed into
signal sidecars.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional

import config
from src.errors import InvalidParameterError


@dataclass
class TheoreticalProfile:
    kind: str
    params: Dict
    h_of_p: Callable[[float], float] = field(repr=False)
    p0: float
    beta_osc: float = 0.0
    # (p, s) -> exponent after fractional integration of order s, None when no closed form
    h_of_ps: Optional[Callable[[float, float], Optional[float]]] = field(default=None, repr=False)
    # global wavelet scaling function, only where it is part of the construction
    eta_of_p: Optional[Callable[[float], float]] = field(default=None, repr=False)

    def defined_at(self, p: float) -> bool:
        """h_p is meaningful for p < p0 (all p when p0 is infinite)."""
        return math.isinf(self.p0) or p < self.p0

    def shifted(self, p: float, s: float) -> Optional[float]:
        if s == 0:
            return self.h_of_p(p)
        if self.h_of_ps is None:
            return None
        return self.h_of_ps(p, s)

    def integrated(self, s: float) -> "TheoreticalProfile":
        """Profile of the signal after fractional integration of order s."""
        if s == 0:
            return self
        h_at_one = self.shifted(1.0, s)
        if h_at_one is None:
            raise InvalidParameterError(f"{self.kind}: no closed-form profile after integration of order {s}")
        return TheoreticalProfile(
            kind=self.kind,
            params={**self.params, "integrated_s": s},
            h_of_p=lambda p: self.h_of_ps(p, s),
            p0=math.inf,
            beta_osc=self.beta_osc,
        )

    def to_dict(self, p_grid: Iterable[float] = config.DEFAULT_P_GRID) -> Dict:
        samples = []
        for p in p_grid:
            samples.append({
                "p": "inf" if math.isinf(p) else p,
                "h_p": self.h_of_p(p),
                "defined": self.defined_at(p),
            })
        return {
            "kind": self.kind,
            "params": self.params,
            "p0": "inf" if math.isinf(self.p0) else self.p0,
            "beta_osc": self.beta_osc,
            "h_p": samples,
        }


def _critical_p(alpha: float, d_over: float = 1.0) -> float:
    """-d/alpha for alpha < 0, infinite otherwise."""
    return -d_over / alpha if alpha < 0 else math.inf


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def theoretical_profile(meta: Dict) -> TheoreticalProfile:
    kind = meta.get("generator")
    params = meta.get("params", {})
    try:
        profile = _build(kind, params)
    except KeyError as e:
        raise InvalidParameterError(f"{kind}: meta lacks parameter {e}")
    s_int = meta.get("integrated_s", 0.0)
    return profile.integrated(s_int) if s_int else profile


def _build(kind: str, params: Dict) -> TheoreticalProfile:
    if kind in ("cusp", "selfsimilar"):
        alpha = params["alpha"]
        return TheoreticalProfile(
            kind=kind, params=params,
            h_of_p=lambda p: alpha,
            p0=_critical_p(alpha),
            h_of_ps=lambda p, s: alpha + s,
        )

    if kind == "chirp":
        alpha, beta = params["alpha"], params["beta"]
        return TheoreticalProfile(
            kind=kind, params=params,
            h_of_p=lambda p: alpha,
            p0=_critical_p(alpha),
            beta_osc=beta,
            h_of_ps=lambda p, s: alpha + s * (1 + beta),
        )

    if kind == "comb":
        alpha, gamma = params["alpha"], params["gamma"]

        def comb_ps(p: float, s: float) -> Optional[float]:
            # the primitive is a staircase with steps 2^-((alpha+gamma) l) at 2^-l
            if s == 1 and p >= 1:
                return alpha + gamma
            return None

        return TheoreticalProfile(
            kind=kind, params=params,
            # below p = 1 the teeth act through their masses
            h_of_p=lambda p: alpha + (gamma - 1) * min(1.0, _inv(p)),
            p0=_critical_p(alpha, gamma),
            beta_osc=gamma - 1,
            h_of_ps=comb_ps,
        )

    if kind == "general_comb":
        pieces = [tuple(pc) for pc in params["pieces"]]
        p0 = params.get("p0", math.inf)
        p0 = math.inf if p0 in ("inf", None) else float(p0)

        def rho(r: float) -> float:
            return min(a * r + b for a, b in pieces)

        return TheoreticalProfile(
            kind=kind, params=params,
            h_of_p=lambda p: rho(min(1.0, _inv(p))),
            p0=p0,
            beta_osc=max(a for a, _ in pieces),
        )

    if kind == "cusp_plus_chirp":
        gamma, alpha, beta = params["gamma"], params["alpha"], params["beta"]
        return TheoreticalProfile(
            kind=kind, params=params,
            h_of_p=lambda p: alpha,
            p0=_critical_p(alpha),
            beta_osc=beta,
            h_of_ps=lambda p, s: min(gamma + s, alpha + s * (1 + beta)),
        )

    if kind == "wgn":
        return TheoreticalProfile(
            kind=kind, params=params,
            h_of_p=lambda p: -0.5,
            p0=0.0,
            h_of_ps=lambda p, s: -0.5 + s,
            eta_of_p=lambda p: -p / 2,
        )

    raise InvalidParameterError(f"unknown generator kind: {kind}")
