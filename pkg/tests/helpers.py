"""Builders for synthetic coefficients and profiles."""

import numpy as np

from src.estimation.pexp import PExponentProfile
from src.estimation.regression import RegressionFit
from src.wavelets.dwt import WaveletCoeffs, WaveletSpec


def make_coeffs(details):
    """WaveletCoeffs from raw per-level arrays (level 1 first), no boundary flags."""
    details = [np.asarray(c, dtype=float) for c in details]
    N = details[0].size * 2
    J = len(details)
    return WaveletCoeffs(
        details=details,
        boundary=[np.zeros(c.size, dtype=bool) for c in details],
        approx=np.zeros(N >> J),
        wavelet=WaveletSpec(),
        N=N,
    )


def random_details(rng, L, J, spread=3.0):
    """Signed coefficients whose magnitudes span 10^(+/- spread)."""
    out = []
    for j in range(1, J + 1):
        n = 2 ** (L - j)
        out.append(rng.standard_normal(n) * 10.0 ** rng.uniform(-spread, spread, n))
    return out


def make_profile(p_grid, h, se=0.01, s=0.0, admissible=None):
    """Synthetic profile with the given estimates, every entry fitted."""
    admissible = [True] * len(p_grid) if admissible is None else admissible
    fits = [RegressionFit(slope=v, intercept=0.0, stderr=se, r2=1.0, j1=3, j2=8) for v in h]
    return PExponentProfile(
        x0=0.5,
        p_grid=list(p_grid),
        h_hat=list(h),
        fits=fits,
        admissible=list(admissible),
        s=s,
        p0=float("inf"),
        errors=[None] * len(p_grid),
        fit_range=(3, 8),
    )
