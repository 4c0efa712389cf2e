import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import config

from src.errors import InvalidParameterError
from src.estimation.pexp import cube_index
from src.generators.signals import Signal, gen_cusp, gen_wgn, sample_grid
from src.wavelets.dwt import WaveletCoeffs, WaveletSpec, boundary_masks, forward_dwt, inverse_dwt
from src.wavelets.fractional import fourier_multiplier, fractional_integrate_fourier


# ============================================================
# FILTERS
# ============================================================

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
class TestFilters:
    def test_unit_norm(self, n):
        h = WaveletSpec(n_vanishing=n).dec_lo
        assert np.sum(h ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_even_shifts_orthogonal(self, n):
        h = WaveletSpec(n_vanishing=n).dec_lo
        for m in range(1, n):
            assert abs(np.dot(h[2 * m:], h[:-2 * m])) < 1e-12

    def test_vanishing_moments(self, n):
        g = WaveletSpec(n_vanishing=n).dec_hi
        k = np.arange(g.size, dtype=float)
        for d in range(n):
            assert abs(np.sum(g * k ** d)) < 1e-8

    def test_filter_length(self, n):
        assert WaveletSpec(n_vanishing=n).filter_length == 2 * n


def test_max_level():
    assert WaveletSpec().max_level(16) == 14
    assert WaveletSpec().max_level(8) == 6
    assert WaveletSpec(n_vanishing=5).max_level(8) == 5


@pytest.mark.parametrize("family,n", [("sym", 3), ("db", 0), ("db", 2.5)])
def test_bad_wavelet(family, n):
    with pytest.raises(InvalidParameterError):
        WaveletSpec(family=family, n_vanishing=n)


# ============================================================
# BOUNDARY MASKS
# ============================================================

def test_boundary_masks_db3():
    masks = boundary_masks(256, 2, 6)
    assert np.flatnonzero(masks[0]).tolist() == [0, 127]
    assert np.flatnonzero(masks[1]).tolist() == [0, 1, 62, 63]


def test_coarsest_level_fully_flagged():
    coeffs = forward_dwt(gen_wgn(16, seed=0))
    assert coeffs.J == 14
    assert coeffs.boundary_mask(14).all()


# ============================================================
# FORWARD / INVERSE
# ============================================================

def test_constant_has_no_details():
    coeffs = forward_dwt(Signal(np.full(1024, 2.5), 0.5))
    for j in range(1, coeffs.J + 1):
        assert np.max(np.abs(coeffs.level(j))) < 1e-10


def test_ramp_killed_by_two_vanishing_moments():
    sig = Signal(sample_grid(10), 0.5)
    coeffs = forward_dwt(sig, WaveletSpec(n_vanishing=2))
    for j in range(1, coeffs.J + 1):
        interior = coeffs.level(j)[~coeffs.boundary_mask(j)]
        assert np.max(np.abs(interior), initial=0.0) < 1e-9


def test_ramp_wraps_at_the_edges():
    coeffs = forward_dwt(Signal(sample_grid(10), 0.5), WaveletSpec(n_vanishing=2))
    assert np.max(np.abs(coeffs.level(3)[coeffs.boundary_mask(3)])) > 1e-3


@pytest.mark.parametrize("sig", [gen_wgn(10, seed=2), gen_cusp(0.5, L=10)], ids=["wgn", "cusp"])
def test_round_trip(sig):
    back = inverse_dwt(forward_dwt(sig))
    assert np.max(np.abs(back.samples - sig.samples)) < 1e-10


def test_l1_normalization_preserves_energy():
    sig = gen_wgn(12, seed=5)
    coeffs = forward_dwt(sig)
    energy = np.sum(coeffs.approx ** 2)
    for j in range(1, coeffs.J + 1):
        energy += np.sum((2.0 ** (j / 2) * coeffs.level(j)) ** 2)
    assert energy == pytest.approx(np.sum(sig.samples ** 2), rel=1e-10)


def test_zero_coefficients_give_zero_signal():
    coeffs = forward_dwt(gen_wgn(10, seed=1))
    zero = WaveletCoeffs([np.zeros_like(c) for c in coeffs.details], coeffs.boundary,
                         np.zeros_like(coeffs.approx), coeffs.wavelet, coeffs.N)
    assert np.all(inverse_dwt(zero).samples == 0.0)


def test_inverse_rejects_bad_shapes():
    coeffs = forward_dwt(gen_wgn(10, seed=1))
    with pytest.raises(InvalidParameterError):
        inverse_dwt(coeffs, approx=np.zeros(3))


@pytest.mark.parametrize("J", [0, 9])
def test_depth_out_of_range(J):
    with pytest.raises(InvalidParameterError):
        forward_dwt(gen_wgn(10, seed=1), J=J)


def test_cusp_coefficients_decay_at_alpha(cusp_pos_coeffs):
    coeffs = cusp_pos_coeffs
    js = np.arange(config.SINGULARITY_FIT_J_MIN, coeffs.J)
    near = []
    for j in js:
        k0 = cube_index(0.5, j, coeffs.N)
        near.append(np.max(np.abs(coeffs.level(j)[k0 - 2:k0 + 3])))
    slope = np.polyfit(js - coeffs.L, np.log2(near), 1)[0]
    assert slope == pytest.approx(0.6, abs=0.1)


def test_coeffs_frame_columns(cusp_pos_coeffs):
    df = cusp_pos_coeffs.to_frame()
    assert list(df.columns) == ["j", "k", "value", "boundary_flag"]
    assert len(df) == sum(c.size for c in cusp_pos_coeffs.details)


# ============================================================
# FRACTIONAL INTEGRATION
# ============================================================

class TestFractionalIntegration:
    def test_zero_order_is_identity(self):
        sig = gen_wgn(10, seed=4)
        out = fractional_integrate_fourier(sig, 0.0)
        assert np.array_equal(out.samples, sig.samples)
        assert out.samples is not sig.samples

    def test_pure_tone_is_attenuated(self):
        x = sample_grid(10)
        sig = Signal(np.cos(2 * np.pi * 8 * x), 0.5)
        m = (1 + (2 * np.pi * 8) ** 2) ** -0.5
        out = fractional_integrate_fourier(sig, 1.0)
        assert np.allclose(out.samples, m * sig.samples, atol=1e-12)

    def test_constant_unchanged(self):
        sig = Signal(np.full(256, 3.0), 0.5)
        assert np.allclose(fractional_integrate_fourier(sig, 2.0).samples, 3.0, atol=1e-12)

    def test_meta_records_order(self):
        sig = fractional_integrate_fourier(gen_cusp(0.6, L=8), 0.5)
        assert sig.meta["integrated_s"] == 0.5

    def test_negative_order_rejected(self):
        with pytest.raises(InvalidParameterError):
            fractional_integrate_fourier(gen_wgn(8), -0.5)

    def test_multiplier_at_dc(self):
        assert fourier_multiplier(16, 1.3)[0] == 1.0

    @settings(max_examples=50, deadline=None)
    @given(s=st.floats(min_value=0.01, max_value=3.0), seed=st.integers(min_value=0, max_value=2 ** 16))
    def test_never_increases_energy(self, s, seed):
        sig = gen_wgn(8, seed=seed)
        out = fractional_integrate_fourier(sig, s)
        assert np.linalg.norm(out.samples) <= np.linalg.norm(sig.samples) * (1 + 1e-12)
