"""
Reference signal generators.

Every generator samples a function on the offset grid x_i = (i + 1/2)/N of
[0, 1), N = 2^L, and returns a `Signal` whose meta carries the generator name,
its parameters and the levels the analysis can trust: `fit_j_min` / `fit_j_max`
for pointwise fits, `global_fit_j_min` / `global_fit_j_max` for structure
functions, `direct_fit_j_min` for direct radii and `ps_truncation_level` for
(p, s)-leaders with s > 0. Missing keys fall back to the package defaults.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

import config
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)


# ============================================================
# MODELS
# ============================================================

@dataclass
class Signal:
    samples: np.ndarray
    x0: float
    meta: Dict = None

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.meta is None:
            self.meta = {}
        n = self.samples.shape[0]
        if self.samples.ndim != 1 or n < 2 or n & (n - 1):
            raise InvalidParameterError(f"signal length must be a power of two, got {self.samples.shape}")
        if n < 2 ** config.MIN_L:
            raise InvalidParameterError(f"signal too short: N={n} < 2^{config.MIN_L}")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidParameterError("signal has non-finite samples")
        if not 0.0 <= self.x0 < 1.0:
            raise InvalidParameterError(f"x0 must lie in [0, 1), got {self.x0}")

    @property
    def N(self) -> int:
        return int(self.samples.shape[0])

    @property
    def L(self) -> int:
        return self.N.bit_length() - 1

    @property
    def x(self) -> np.ndarray:
        return sample_grid(self.L)

    @property
    def generator(self) -> str:
        return self.meta.get("generator", "unknown")

    def scaled(self, factor: float) -> "Signal":
        return Signal(self.samples * factor, self.x0, dict(self.meta))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"index": np.arange(self.N), "x": self.x, "value": self.samples})


@dataclass
class CombSpec:
    alpha: float
    gamma: float

    def __post_init__(self):
        if self.gamma <= 1:
            raise InvalidParameterError(f"comb requires gamma > 1, got {self.gamma}")
        if self.alpha <= -self.gamma:
            raise InvalidParameterError(f"comb requires alpha > -gamma, got alpha={self.alpha}, gamma={self.gamma}")


SCHEDULES = ("dyadic", "cyclic")


@dataclass
class AffineFamily:
    """
    rho(s) = min_n (a_n * s + b_n). Tooth l picks its piece by `schedule`:
    "dyadic" uses n mod M for l = 2^n (2k+1), "cyclic" uses l mod M.
    """
    pieces: List[Tuple[float, float]]
    p0: float = math.inf
    damping: bool = False  # multiply tooth heights by 1/l^2
    schedule: str = "dyadic"

    def __post_init__(self):
        self.pieces = [(float(a), float(b)) for a, b in self.pieces]
        if not self.pieces:
            raise InvalidParameterError("affine family needs at least one piece")
        if self.schedule not in SCHEDULES:
            raise InvalidParameterError(f"schedule must be one of {SCHEDULES}, got {self.schedule}")
        if not self.p0 > 0:
            raise InvalidParameterError(f"p0 must be positive, got {self.p0}")
        if any(a < 0 for a, _ in self.pieces):
            raise InvalidParameterError("affine slopes a_n must be >= 0 (rho nondecreasing)")
        # rho is concave: its minimum over [1/p0, 1] sits at an endpoint
        for s in (1.0 / self.p0, 1.0):
            if self.rho(s) < -1.0 / self.p0 - 1e-12:
                raise InvalidParameterError(f"rho({s:.4g}) = {self.rho(s):.4g} < -1/p0")

    @property
    def M(self) -> int:
        return len(self.pieces)

    def rho(self, s: float) -> float:
        return min(a * s + b for a, b in self.pieces)

    def piece_index(self, l: int) -> int:
        if self.schedule == "cyclic":
            return l % self.M
        return _two_adic_valuation(l) % self.M


@dataclass
class SelfSimilarSpec:
    """
    |x - x0|^alpha * omega_(+/-)(log|x - x0|), omega periodic with period log(ratio).

    omega_plus / omega_minus hold one period sampled uniformly on [0, log(ratio)).
    """
    alpha: float
    ratio: float
    omega_plus: Sequence[float]
    omega_minus: Sequence[float] = None

    def __post_init__(self):
        if self.alpha <= -1:
            raise InvalidParameterError(f"self-similar signal requires alpha > -1, got {self.alpha}")
        if not self.ratio > 1:
            raise InvalidParameterError(f"ratio must exceed 1, got {self.ratio}")
        self.omega_plus = np.asarray(self.omega_plus, dtype=float)
        self.omega_minus = self.omega_plus.copy() if self.omega_minus is None else np.asarray(self.omega_minus, dtype=float)
        for name, prof in (("omega_plus", self.omega_plus), ("omega_minus", self.omega_minus)):
            if prof.ndim != 1 or prof.size == 0 or not np.all(np.isfinite(prof)):
                raise InvalidParameterError(f"{name} must be a non-empty finite 1-D profile")

    @property
    def period(self) -> float:
        return math.log(self.ratio)

    def omega(self, u: np.ndarray, side: str) -> np.ndarray:
        prof = self.omega_plus if side == "+" else self.omega_minus
        m = prof.size
        grid = np.arange(m + 1) * (self.period / m)
        vals = np.append(prof, prof[0])
        return np.interp(np.mod(u, self.period), grid, vals)


def complex_exponent_spec(alpha: float, beta: float, n_samples: int = 256) -> SelfSimilarSpec:
    """Real part of |x - x0|^(alpha + i beta): omega(u) = cos(beta u), ratio e^(2 pi / beta)."""
    if beta <= 0:
        raise InvalidParameterError(f"beta must be positive, got {beta}")
    period = 2 * math.pi / beta
    u = np.arange(n_samples) * (period / n_samples)
    return SelfSimilarSpec(alpha=alpha, ratio=math.exp(period), omega_plus=np.cos(beta * u))


# ============================================================
# HELPERS
# ============================================================

def sample_grid(L: int) -> np.ndarray:
    """Offset grid (i + 1/2)/N: never hits a dyadic x0."""
    n = 2 ** L
    return (np.arange(n) + 0.5) / n


def _check_L(L: int):
    if int(L) != L or L < config.MIN_L:
        raise InvalidParameterError(f"L must be an integer >= {config.MIN_L}, got {L}")


def _check_x0(x0: float):
    if not 0.0 <= x0 < 1.0:
        raise InvalidParameterError(f"x0 must lie in [0, 1), got {x0}")


def _two_adic_valuation(l: int) -> int:
    n = 0
    while l % 2 == 0:
        l //= 2
        n += 1
    return n


def _chirp_fit_j_min(beta: float, L: int) -> int:
    """First level whose scale exceeds the radius where the local period drops below RESOLUTION_SAMPLES."""
    n = 2 ** L
    r_res = (config.RESOLUTION_SAMPLES * beta / (2 * math.pi * n)) ** (1.0 / (beta + 1.0))
    return max(config.DEFAULT_J1, min(L, math.ceil(L + math.log2(r_res))))


def _singularity_fit_levels() -> Dict:
    # below SINGULARITY_FIT_J_MIN the sampled power law is still flat
    return {"fit_j_min": config.SINGULARITY_FIT_J_MIN, "global_fit_j_min": config.SINGULARITY_FIT_J_MIN}


def _chirp_fit_levels(beta: float, L: int) -> Dict:
    """
    Pointwise fits start at the resolution limit. Structure functions use the
    band just around it, and (p, s)-leaders with s > 0 skip the levels below
    that band, where folded samples carry no chirp.
    """
    j_res = _chirp_fit_j_min(beta, L)
    j_global = max(config.DEFAULT_J1, j_res - config.CHIRP_GLOBAL_DEPTH)
    return {
        "fit_j_min": j_res,
        "global_fit_j_min": j_global,
        "global_fit_j_max": min(L, j_res + config.CHIRP_GLOBAL_REACH),
        "ps_truncation_level": j_global,
    }


def _chirp_samples(r: np.ndarray, alpha: float, beta: float, n: int) -> np.ndarray:
    """
    r^alpha sin(r^-beta). Where the local period 2 pi r^(beta+1) / beta spans
    fewer than FOLD_SAMPLES samples the sign alternates from sample to sample,
    so the unresolved core keeps its size but averages out of coarse wavelets.
    """
    v = _singular_power(r, alpha)
    nz = r > 0
    v[nz] *= np.sin(r[nz] ** (-beta))
    fold = 2 * math.pi * r ** (beta + 1.0) / beta * n < config.FOLD_SAMPLES
    signs = np.where(np.arange(r.size) % 2 == 0, 1.0, -1.0)
    v[fold] = signs[fold] * np.abs(v[fold])
    return v


def _singular_power(r: np.ndarray, alpha: float) -> np.ndarray:
    """r^alpha, with a sample sitting exactly on x0 set to 0."""
    out = np.zeros_like(r)
    nz = r > 0
    out[nz] = r[nz] ** alpha
    return out


def _comb_fit_j_min(width_rate: float, L: int) -> int:
    """Levels from L - l_rel up are dominated by teeth at least RESOLUTION_SAMPLES wide."""
    l_rel = math.floor((L - math.log2(config.RESOLUTION_SAMPLES)) / width_rate)
    return max(config.DEFAULT_J1, min(L, L - l_rel))


def _comb_fit_levels(width_rate: float, L: int) -> Dict:
    """
    Leader fits stop COMB_EDGE_LEVELS below the top, before the wavelets at x0 = 0
    reach the first teeth, and span COMB_FIT_LEVELS levels. Direct radii start
    where the teeth inside them are resolved.
    """
    j_max = L - config.COMB_EDGE_LEVELS
    return {
        "fit_j_min": max(config.DEFAULT_J1, j_max - config.COMB_FIT_LEVELS + 1),
        "fit_j_max": j_max,
        "direct_fit_j_min": _comb_fit_j_min(width_rate, L),
    }


def _paint_teeth(x: np.ndarray, ls: np.ndarray, width_exps: np.ndarray, height_exps: np.ndarray,
                 damping: bool = False) -> np.ndarray:
    """Tooth l covers [2^-l, 2^-l + 2^-width_exp) with height 2^-height_exp."""
    samples = np.zeros_like(x)
    for l, w_exp, h_exp in zip(ls, width_exps, height_exps):
        lo = 2.0 ** (-float(l))
        hi = lo + 2.0 ** (-w_exp)
        height = 2.0 ** (-h_exp)
        if damping:
            height = height / float(l) ** 2
        samples[(x >= lo) & (x < hi)] = height
    return samples


def _base_meta(generator: str, params: Dict, x0: float, L: int, **extra) -> Dict:
    meta = {
        "generator": generator,
        "params": params,
        "x0": x0,
        "L": L,
        "N": 2 ** L,
        "fit_j_min": config.DEFAULT_J1,
        "global_fit_j_min": config.DEFAULT_J1,
    }
    meta.update(extra)
    return meta


# ============================================================
# GENERATORS
# ============================================================

def gen_cusp(alpha: float, x0: float = config.DEFAULT_X0, L: int = config.DEFAULT_L) -> Signal:
    """|x - x0|^alpha."""
    _check_L(L)
    _check_x0(x0)
    if alpha >= 0 and float(alpha).is_integer() and int(alpha) % 2 == 0:
        raise InvalidParameterError(f"cusp exponent must not be an even integer, got {alpha}")
    if alpha <= -1:
        raise InvalidParameterError(f"cusp requires alpha > -1, got {alpha}")
    r = np.abs(sample_grid(L) - x0)
    return Signal(_singular_power(r, alpha), x0, _base_meta("cusp", {"alpha": alpha}, x0, L, **_singularity_fit_levels()))


def gen_chirp(alpha: float, beta: float, x0: float = config.DEFAULT_X0, L: int = config.DEFAULT_L) -> Signal:
    """|x - x0|^alpha sin(|x - x0|^-beta)."""
    _check_L(L)
    _check_x0(x0)
    if beta <= 0:
        raise InvalidParameterError(f"chirp requires beta > 0, got {beta}")
    if alpha <= -1:
        raise InvalidParameterError(f"chirp requires alpha > -1, got {alpha}")
    r = np.abs(sample_grid(L) - x0)
    meta = _base_meta("chirp", {"alpha": alpha, "beta": beta}, x0, L, **_chirp_fit_levels(beta, L))
    return Signal(_chirp_samples(r, alpha, beta, 2 ** L), x0, meta)


def gen_lacunary_comb(spec: CombSpec, L: int = config.DEFAULT_L) -> Signal:
    """Teeth 2^(-alpha l) on [2^-l, 2^-l + 2^(-gamma l)], l = 1..floor(L/gamma); x0 = 0."""
    _check_L(L)
    l_max = math.floor(L / spec.gamma)
    ls = np.arange(1, l_max + 1)
    samples = _paint_teeth(sample_grid(L), ls, spec.gamma * ls, spec.alpha * ls)
    warn = bool(2.0 ** (-spec.gamma * l_max) < config.RESOLUTION_SAMPLES / 2 ** L)
    if warn:
        logger.warning("comb(%s, %s): finest tooth l=%d spans fewer than %d samples",
                       spec.alpha, spec.gamma, l_max, config.RESOLUTION_SAMPLES)
    meta = _base_meta("comb", {"alpha": spec.alpha, "gamma": spec.gamma}, config.COMB_X0, L,
                      l_max=l_max, resolution_warning=warn, **_comb_fit_levels(spec.gamma, L))
    return Signal(samples, config.COMB_X0, meta)


def gen_general_comb(family: AffineFamily, L: int = config.DEFAULT_L) -> Signal:
    """
    Comb with a prescribed concave profile: tooth l uses piece n = family.piece_index(l),
    width 2^-((a_n + 1) l), height 2^-(b_n l) (times 1/l^2 when damped).
    Teeth narrower than one sample are dropped, and so are teeth reaching x = 1:
    the periodic transform would wrap them onto x0 = 0.
    """
    _check_L(L)
    ls, widths, heights = [], [], []
    for l in range(1, L + 1):
        a, b = family.pieces[family.piece_index(l)]
        omega = (a + 1.0) * l
        if omega > L or 2.0 ** (-l) + 2.0 ** (-omega) >= 1.0:
            continue
        ls.append(l)
        widths.append(omega)
        heights.append(b * l)
    samples = _paint_teeth(sample_grid(L), np.array(ls), np.array(widths), np.array(heights),
                           damping=family.damping)
    a_max = max(a for a, _ in family.pieces)
    finest = max(widths, default=0.0)
    warn = bool(2.0 ** (-finest) < config.RESOLUTION_SAMPLES / 2 ** L)
    meta = _base_meta("general_comb",
                      {"pieces": [list(pc) for pc in family.pieces], "p0": family.p0, "damping": family.damping,
                       "schedule": family.schedule},
                      config.COMB_X0, L,
                      l_max=max(ls, default=0), resolution_warning=warn, **_comb_fit_levels(a_max + 1.0, L))
    return Signal(samples, config.COMB_X0, meta)


def gen_selfsimilar(spec: SelfSimilarSpec, x0: float = config.DEFAULT_X0, L: int = config.DEFAULT_L) -> Signal:
    """|x - x0|^alpha omega_+(log(x - x0)) right of x0, omega_-(log(x0 - x)) left of it."""
    _check_L(L)
    _check_x0(x0)
    x = sample_grid(L)
    r = np.abs(x - x0)
    u = np.log(np.where(r > 0, r, 1.0))
    omega = np.where(x > x0, spec.omega(u, "+"), spec.omega(u, "-"))
    params = {
        "alpha": spec.alpha,
        "ratio": spec.ratio,
        "omega_plus": spec.omega_plus.tolist(),
        "omega_minus": spec.omega_minus.tolist(),
    }
    meta = _base_meta("selfsimilar", params, x0, L, **_singularity_fit_levels())
    return Signal(_singular_power(r, spec.alpha) * omega, x0, meta)


def gen_cusp_plus_chirp(gamma: float, alpha: float, beta: float,
                        x0: float = config.DEFAULT_X0, L: int = config.DEFAULT_L) -> Signal:
    """|x - x0|^gamma + |x - x0|^alpha sin(|x - x0|^-beta), with alpha < gamma < alpha/(1+beta) < 0."""
    _check_L(L)
    _check_x0(x0)
    if beta <= 0:
        raise InvalidParameterError(f"chirp part requires beta > 0, got {beta}")
    if alpha <= -1:
        raise InvalidParameterError(f"chirp part requires alpha > -1, got {alpha}")
    if not (alpha < gamma < alpha / (1 + beta) < 0):
        raise InvalidParameterError(
            f"need alpha < gamma < alpha/(1+beta) < 0, got alpha={alpha}, gamma={gamma}, "
            f"alpha/(1+beta)={alpha / (1 + beta):.4g}")
    r = np.abs(sample_grid(L) - x0)
    meta = _base_meta("cusp_plus_chirp", {"gamma": gamma, "alpha": alpha, "beta": beta}, x0, L,
                      **_chirp_fit_levels(beta, L),
                      dominant="chirp", dominant_integrated="cusp")
    return Signal(_singular_power(r, gamma) + _chirp_samples(r, alpha, beta, 2 ** L), x0, meta)


def gen_wgn(L: int = config.DEFAULT_L, seed: int = config.DEFAULT_SEED) -> Signal:
    """IID standard normal samples from a counter-based (Philox) generator."""
    _check_L(L)
    rng = np.random.Generator(np.random.Philox(seed))
    samples = rng.standard_normal(2 ** L)
    return Signal(samples, config.DEFAULT_X0, _base_meta("wgn", {"seed": seed}, config.DEFAULT_X0, L))


# ============================================================
# DISPATCH
# ============================================================

GENERATORS = ("cusp", "chirp", "comb", "general_comb", "selfsimilar", "cusp_plus_chirp", "wgn")


def generate(kind: str, params: Dict, x0: Optional[float] = None, L: int = config.DEFAULT_L) -> Signal:
    """Build a signal from a generator name and a flat parameter dict."""
    x0 = config.DEFAULT_X0 if x0 is None else x0
    try:
        if kind == "cusp":
            return gen_cusp(params["alpha"], x0, L)
        if kind == "chirp":
            return gen_chirp(params["alpha"], params["beta"], x0, L)
        if kind == "comb":
            return gen_lacunary_comb(CombSpec(params["alpha"], params["gamma"]), L)
        if kind == "general_comb":
            family = AffineFamily(params["pieces"], params.get("p0", math.inf), params.get("damping", False),
                                  params.get("schedule", "dyadic"))
            return gen_general_comb(family, L)
        if kind == "selfsimilar":
            if params.get("omega_plus") is None:
                spec = complex_exponent_spec(params["alpha"], params["beta"])
            else:
                spec = SelfSimilarSpec(params["alpha"], params["ratio"], params["omega_plus"],
                                       params.get("omega_minus"))
            return gen_selfsimilar(spec, x0, L)
        if kind == "cusp_plus_chirp":
            return gen_cusp_plus_chirp(params["gamma"], params["alpha"], params["beta"], x0, L)
        if kind == "wgn":
            return gen_wgn(L, params.get("seed", config.DEFAULT_SEED))
    except (KeyError, TypeError) as e:
        raise InvalidParameterError(f"{kind}: missing or malformed parameter {e}")
    raise InvalidParameterError(f"unknown generator: {kind}")
