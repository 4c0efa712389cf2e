"""Fractional integration in the Fourier domain."""

import numpy as np

from src.errors import InvalidParameterError
from src.generators.signals import Signal


def fourier_multiplier(N: int, s: float) -> np.ndarray:
    """(1 + xi_k^2)^(-s/2), xi_k = 2 pi k, for the rfft bins k = 0..N/2."""
    xi = 2 * np.pi * np.arange(N // 2 + 1)
    return (1.0 + xi ** 2) ** (-s / 2)


def fractional_integrate_fourier(signal: Signal, s: float) -> Signal:
    if s < 0:
        raise InvalidParameterError(f"s must be >= 0 (fractional differentiation unsupported), got {s}")
    meta = dict(signal.meta)
    if s == 0:
        return Signal(signal.samples.copy(), signal.x0, meta)
    # real input: the multiplier is even in k, so rfft bins cover both signs
    spectrum = np.fft.rfft(signal.samples) * fourier_multiplier(signal.N, s)
    meta["integrated_s"] = meta.get("integrated_s", 0.0) + s
    return Signal(np.fft.irfft(spectrum, n=signal.N), signal.x0, meta)
