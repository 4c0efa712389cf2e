"""
L1-normalized orthonormal DWT on top of PyWavelets.

Level j = 1 is the finest; level j holds N / 2^j coefficients at physical
scale a_j = 2^(j - L). pywt returns [cA_J, cD_J, ..., cD_1], so level j is
coeffs[-j]. The periodic ('periodization') extension is exactly invertible;
coefficients whose support wraps around the domain edge are flagged in
per-level boundary masks.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import pywt

import config
from src.errors import InvalidParameterError
from src.generators.signals import Signal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WaveletSpec:
    family: str = config.WAVELET_FAMILY
    n_vanishing: int = config.DEFAULT_N_VANISHING

    def __post_init__(self):
        if self.family != "db":
            raise InvalidParameterError(f"only Daubechies wavelets are supported, got {self.family}")
        if int(self.n_vanishing) != self.n_vanishing or self.n_vanishing < 1:
            raise InvalidParameterError(f"n_vanishing must be a positive integer, got {self.n_vanishing}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.n_vanishing}"

    @property
    def pywt(self) -> pywt.Wavelet:
        return pywt.Wavelet(self.name)

    @property
    def dec_lo(self) -> np.ndarray:
        return np.asarray(self.pywt.dec_lo)

    @property
    def dec_hi(self) -> np.ndarray:
        return np.asarray(self.pywt.dec_hi)

    @property
    def filter_length(self) -> int:
        return self.pywt.dec_len

    def max_level(self, L: int) -> int:
        """Deepest J <= L - 2 whose input length 2^(L - J + 1) still holds a filter."""
        J = L - 2
        while J > 1 and 2 ** (L - J + 1) < self.filter_length:
            J -= 1
        return J

    def to_dict(self) -> Dict:
        return {"family": self.family, "n_vanishing": self.n_vanishing, "name": self.name}


@dataclass
class WaveletCoeffs:
    details: List[np.ndarray]       # details[j-1] = L1-normalized c_{j,.}
    boundary: List[np.ndarray]      # boundary[j-1][k] = support wraps the domain edge
    approx: np.ndarray              # L2-normalized coarse approximation, kept for inversion
    wavelet: WaveletSpec
    N: int
    x0: float = 0.0
    meta: Dict = field(default_factory=dict)
    normalization: str = "L1"

    @property
    def J(self) -> int:
        return len(self.details)

    @property
    def L(self) -> int:
        return self.N.bit_length() - 1

    def level(self, j: int) -> np.ndarray:
        return self.details[j - 1]

    def boundary_mask(self, j: int) -> np.ndarray:
        return self.boundary[j - 1]

    def log2_scale(self, j: int) -> int:
        return j - self.L

    def scaled(self, factor: float) -> "WaveletCoeffs":
        return WaveletCoeffs([c * factor for c in self.details], self.boundary, self.approx * factor,
                             self.wavelet, self.N, self.x0, dict(self.meta))

    def to_frame(self) -> pd.DataFrame:
        frames = []
        for j in range(1, self.J + 1):
            c = self.level(j)
            frames.append(pd.DataFrame({
                "j": j,
                "k": np.arange(c.size),
                "value": c,
                "boundary_flag": self.boundary_mask(j).astype(int),
            }))
        return pd.concat(frames, ignore_index=True)


def boundary_masks(N: int, J: int, filter_length: int) -> List[np.ndarray]:
    """
    Level-j coefficient k of the periodized pyramid reads samples
    [2^j k - (F/2 - 1)(2^j - 1), 2^j k + (F/2)(2^j - 1)].
    """
    half = filter_length // 2
    masks = []
    for j in range(1, J + 1):
        k = np.arange(N >> j)
        span = 2 ** j - 1
        lo = (k << j) - (half - 1) * span
        hi = (k << j) + half * span
        masks.append((lo < 0) | (hi > N - 1))
    return masks


def forward_dwt(signal: Signal, wavelet: Optional[WaveletSpec] = None, J: Optional[int] = None) -> WaveletCoeffs:
    wavelet = wavelet or WaveletSpec()
    N, L = signal.N, signal.L
    if N & (N - 1):
        raise InvalidParameterError(f"N must be a power of two, got {N}")
    J = wavelet.max_level(L) if J is None else J
    if J < 1 or J > L - 2:
        raise InvalidParameterError(f"J must lie in [1, L-2] = [1, {L - 2}], got {J}")
    if 2 ** (L - J + 1) < wavelet.filter_length:
        raise InvalidParameterError(
            f"J={J} too deep for {wavelet.name}: level-{J} input has {2 ** (L - J + 1)} samples "
            f"< filter length {wavelet.filter_length}")

    coeffs = pywt.wavedec(signal.samples, wavelet.name, mode=config.WAVELET_MODE, level=J)
    details = [coeffs[-j] * 2.0 ** (-j / 2) for j in range(1, J + 1)]
    logger.debug("forward_dwt: %s, N=%d, J=%d", wavelet.name, N, J)
    return WaveletCoeffs(
        details=details,
        boundary=boundary_masks(N, J, wavelet.filter_length),
        approx=coeffs[0],
        wavelet=wavelet,
        N=N,
        x0=signal.x0,
        meta=dict(signal.meta),
    )


def inverse_dwt(coeffs: WaveletCoeffs, approx: Optional[np.ndarray] = None) -> Signal:
    approx = coeffs.approx if approx is None else np.asarray(approx, dtype=float)
    J, N = coeffs.J, coeffs.N
    if approx.shape != (N >> J,):
        raise InvalidParameterError(f"approx must have {N >> J} entries, got {approx.shape}")
    for j in range(1, J + 1):
        if coeffs.level(j).shape != (N >> j,):
            raise InvalidParameterError(f"level {j} must have {N >> j} entries, got {coeffs.level(j).shape}")

    pyramid = [approx] + [coeffs.level(j) * 2.0 ** (j / 2) for j in range(J, 0, -1)]
    samples = pywt.waverec(pyramid, coeffs.wavelet.name, mode=config.WAVELET_MODE)
    return Signal(samples, coeffs.x0, dict(coeffs.meta))
