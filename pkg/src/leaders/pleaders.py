"""
p-leaders, sup-leaders and (p, s)-leaders.

For the cube lambda_{j,k}:

    l^(p)(j,k)^p = sum over j' <= j and lambda' in 3*lambda of |c_{j',k'}|^p 2^-(j-j')

computed in O(N) with the subtree totals

    T(j,k) = |c_{j,k}|^p + (T(j-1,2k) + T(j-1,2k+1)) / 2,
    l^(p)(j,k)^p = T(j,k-1) + T(j,k) + T(j,k+1).

The pairwise tree fixes the summation order (fine to coarse, ascending k),
so results are bit-deterministic and rounding grows like log N. Windows 3*lambda
are clipped at the domain edges, never wrapped; clipped entries are flagged.

A truncation level t drops the levels j' < t from every sum; the level is
recorded in the field's meta.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from src.errors import InvalidParameterError
from src.wavelets.dwt import WaveletCoeffs

logger = logging.getLogger(__name__)


@dataclass
class LeaderField:
    values: List[np.ndarray]     # values[j-1][k] = l(j,k)
    clipped: List[np.ndarray]    # window 3*lambda clipped at a domain edge
    p: float
    s: float
    N: int
    meta: Dict = field(default_factory=dict)

    @property
    def J(self) -> int:
        return len(self.values)

    @property
    def L(self) -> int:
        return self.N.bit_length() - 1

    def level(self, j: int) -> np.ndarray:
        return self.values[j - 1]

    def clipped_mask(self, j: int) -> np.ndarray:
        return self.clipped[j - 1]

    def to_frame(self) -> pd.DataFrame:
        frames = []
        for j in range(1, self.J + 1):
            v = self.level(j)
            frames.append(pd.DataFrame({
                "j": j,
                "k": np.arange(v.size),
                "value": v,
                "clipped_flag": self.clipped_mask(j).astype(int),
            }))
        return pd.concat(frames, ignore_index=True)


def _check_s(s: float):
    if not s >= 0:
        raise InvalidParameterError(f"s must be >= 0, got {s}")


def _check_truncation(t: int, J: int):
    if int(t) != t or not 1 <= t <= J:
        raise InvalidParameterError(f"truncation level must be an integer in [1, {J}], got {t}")


def _magnitudes(coeffs: WaveletCoeffs, s: float, truncation_level: int = 1) -> List[np.ndarray]:
    """|c_{j,k}|, weighted by 2^(s (j - L)) for (p, s)-leaders; zero below the truncation level."""
    mags = []
    for j in range(1, coeffs.J + 1):
        c = coeffs.level(j)
        if j < truncation_level:
            mags.append(np.zeros(c.size))
        elif s == 0:
            mags.append(np.abs(c))
        else:
            mags.append(np.abs(c) * 2.0 ** (s * (j - coeffs.L)))
    return mags


def default_truncation(coeffs: WaveletCoeffs, s: float) -> int:
    """Signal-provided truncation for s > 0 (`ps_truncation_level`), 1 otherwise."""
    if s == 0:
        return 1
    return min(int(coeffs.meta.get("ps_truncation_level", 1)), coeffs.J)


def _clip_flags(n: int) -> np.ndarray:
    flags = np.zeros(n, dtype=bool)
    flags[0] = True
    flags[-1] = True
    return flags


def _neighbour_sum(t: np.ndarray) -> np.ndarray:
    out = t.copy()
    out[1:] += t[:-1]
    out[:-1] += t[1:]
    return out


def _neighbour_max(t: np.ndarray) -> np.ndarray:
    out = t.copy()
    np.maximum(out[1:], t[:-1], out=out[1:])
    np.maximum(out[:-1], t[1:], out=out[:-1])
    return out


def _field_meta(coeffs: WaveletCoeffs, truncation_level: int) -> Dict:
    meta = {
        "wavelet": coeffs.wavelet.to_dict(),
        "truncation_level": int(truncation_level),
        "x0": coeffs.x0,
        "generator": coeffs.meta.get("generator"),
    }
    # pointwise fit window travels with the field
    for key in ("fit_j_min", "fit_j_max"):
        if key in coeffs.meta:
            meta[key] = coeffs.meta[key]
    return meta


def compute_ps_leaders(coeffs: WaveletCoeffs, p: float, s: float = 0.0, truncation_level: int = 1) -> LeaderField:
    if not (p > 0 and math.isfinite(p)):
        raise InvalidParameterError(f"p must be a positive finite number, got {p}")
    _check_s(s)
    _check_truncation(truncation_level, coeffs.J)

    values, clipped = [], []
    subtree = None
    for mag in _magnitudes(coeffs, s, truncation_level):
        own = mag ** p
        subtree = own if subtree is None else own + 0.5 * (subtree[0::2] + subtree[1::2])
        values.append(_neighbour_sum(subtree) ** (1.0 / p))
        clipped.append(_clip_flags(subtree.size))

    return LeaderField(values, clipped, p=p, s=s, N=coeffs.N, meta=_field_meta(coeffs, truncation_level))


def compute_pleaders(coeffs: WaveletCoeffs, p: float) -> LeaderField:
    return compute_ps_leaders(coeffs, p, 0.0)


def compute_leaders_inf(coeffs: WaveletCoeffs, s: float = 0.0, truncation_level: int = 1) -> LeaderField:
    """Classical leaders: sup of |c| over the same index set (p = inf)."""
    _check_s(s)
    _check_truncation(truncation_level, coeffs.J)
    values, clipped = [], []
    subtree = None
    for mag in _magnitudes(coeffs, s, truncation_level):
        subtree = mag if subtree is None else np.maximum(mag, np.maximum(subtree[0::2], subtree[1::2]))
        values.append(_neighbour_max(subtree))
        clipped.append(_clip_flags(subtree.size))

    return LeaderField(values, clipped, p=math.inf, s=s, N=coeffs.N, meta=_field_meta(coeffs, truncation_level))


def leaders_for(coeffs: WaveletCoeffs, p: float, s: float = 0.0, truncation_level: Optional[int] = None) -> LeaderField:
    """
    Dispatch on p: sup-leaders for p = inf, (p, s)-leaders otherwise.
    Without an explicit truncation level the signal's own (`default_truncation`) applies.
    """
    if truncation_level is None:
        truncation_level = default_truncation(coeffs, s)
    if math.isinf(p):
        return compute_leaders_inf(coeffs, s, truncation_level)
    return compute_ps_leaders(coeffs, p, s, truncation_level)
