"""Shared reference signals and their wavelet coefficients (built once per session)."""

import pytest

from src.estimation.pexp import pexp_profile
from src.generators.signals import (
    AffineFamily, CombSpec, gen_chirp, gen_cusp, gen_cusp_plus_chirp, gen_general_comb,
    gen_lacunary_comb, gen_wgn,
)
from src.wavelets.dwt import forward_dwt


# ============================================================
# SIGNALS
# ============================================================

@pytest.fixture(scope="session")
def cusp_pos():
    return gen_cusp(0.6)


@pytest.fixture(scope="session")
def cusp_neg():
    return gen_cusp(-0.4)


@pytest.fixture(scope="session")
def chirp_neg():
    return gen_chirp(-0.3, 1.0)


@pytest.fixture(scope="session")
def chirp_pos():
    return gen_chirp(0.5, 1.0)


@pytest.fixture(scope="session")
def comb_steep():
    # the leader window [L - 9, L - 4] needs L = 20 to hold teeth at gamma = 3
    return gen_lacunary_comb(CombSpec(-0.2, 3.0), L=20)


@pytest.fixture(scope="session")
def comb_mild():
    return gen_lacunary_comb(CombSpec(0.3, 2.0), L=16)


@pytest.fixture(scope="session")
def comb_mild_fine():
    return gen_lacunary_comb(CombSpec(0.3, 2.0), L=20)


@pytest.fixture(scope="session")
def two_piece_comb():
    return gen_general_comb(AffineFamily([(0.0, 0.5), (1.0, 0.0)], schedule="cyclic"), L=20)


@pytest.fixture(scope="session")
def cusp_chirp():
    return gen_cusp_plus_chirp(-0.2, -0.3, 1.0)


@pytest.fixture(scope="session")
def wgn():
    return gen_wgn(16, seed=7)


# ============================================================
# COEFFICIENTS / PROFILES
# ============================================================

@pytest.fixture(scope="session")
def cusp_pos_coeffs(cusp_pos):
    return forward_dwt(cusp_pos)


@pytest.fixture(scope="session")
def cusp_neg_coeffs(cusp_neg):
    return forward_dwt(cusp_neg)


@pytest.fixture(scope="session")
def chirp_neg_coeffs(chirp_neg):
    return forward_dwt(chirp_neg)


@pytest.fixture(scope="session")
def cusp_chirp_coeffs(cusp_chirp):
    return forward_dwt(cusp_chirp)


@pytest.fixture(scope="session")
def wgn_coeffs(wgn):
    return forward_dwt(wgn)


@pytest.fixture(scope="session")
def cusp_pos_profile(cusp_pos):
    return pexp_profile(cusp_pos)


@pytest.fixture(scope="session")
def chirp_neg_profile(chirp_neg):
    return pexp_profile(chirp_neg)


@pytest.fixture(scope="session")
def comb_steep_profile(comb_steep):
    return pexp_profile(comb_steep)
