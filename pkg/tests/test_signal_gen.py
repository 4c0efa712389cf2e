import math

import numpy as np
import pytest

import config
from src.errors import InvalidParameterError
from src.generators.profiles import theoretical_profile
from src.generators.signals import (
    AffineFamily, CombSpec, SelfSimilarSpec, Signal, complex_exponent_spec, gen_chirp, gen_cusp,
    gen_cusp_plus_chirp, gen_general_comb, gen_lacunary_comb, gen_selfsimilar, gen_wgn, generate,
    sample_grid,
)

# x0 half a sample off the centre, so that x0 + 1/4 is a grid point
X0_ON_QUARTER = 0.5 + 0.5 / 256


def _index_of(x, target):
    return int(np.argmin(np.abs(x - target)))


# ============================================================
# SIGNAL MODEL
# ============================================================

class TestSignal:
    def test_grid_is_offset(self):
        x = sample_grid(8)
        assert x[0] == 0.5 / 256
        assert x[-1] == 255.5 / 256

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidParameterError):
            Signal(np.ones(1000), 0.5)

    def test_rejects_short_signal(self):
        with pytest.raises(InvalidParameterError):
            Signal(np.ones(64), 0.5)

    def test_rejects_x0_outside_domain(self):
        with pytest.raises(InvalidParameterError):
            Signal(np.ones(256), 1.0)

    def test_to_frame_columns(self):
        df = gen_cusp(0.5, L=8).to_frame()
        assert list(df.columns) == ["index", "x", "value"]
        assert len(df) == 256


# ============================================================
# CUSP / CHIRP
# ============================================================

class TestCusp:
    def test_value_at_quarter_distance(self):
        sig = gen_cusp(0.5, x0=X0_ON_QUARTER, L=8)
        i = _index_of(sig.x, X0_ON_QUARTER + 0.25)
        assert sig.samples[i] == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 2.0, 4.0])
    def test_even_integer_rejected(self, alpha):
        with pytest.raises(InvalidParameterError):
            gen_cusp(alpha)

    @pytest.mark.parametrize("alpha", [-1.0, -1.5])
    def test_alpha_too_small_rejected(self, alpha):
        with pytest.raises(InvalidParameterError):
            gen_cusp(alpha)

    def test_odd_integer_allowed(self):
        sig = gen_cusp(1.0, L=8)
        assert np.allclose(sig.samples, np.abs(sig.x - 0.5))

    def test_theoretical_profile(self):
        prof = theoretical_profile(gen_cusp(-0.4, L=8).meta)
        assert prof.h_of_p(1.0) == -0.4
        assert prof.p0 == pytest.approx(2.5)
        assert math.isinf(theoretical_profile(gen_cusp(0.6, L=8).meta).p0)


def _folded(r, beta, n):
    return 2 * np.pi * r ** (beta + 1) / beta * n < config.FOLD_SAMPLES


class TestChirp:
    def test_samples_follow_formula(self):
        sig = gen_chirp(1.0, 1.0, L=8)
        r = np.abs(sig.x - 0.5)
        resolved = ~_folded(r, 1.0, sig.N)
        assert resolved.sum() > 200
        assert np.allclose(sig.samples[resolved], (r * np.sin(1.0 / r))[resolved], atol=1e-12)

    def test_unresolved_core_alternates_sign(self):
        sig = gen_chirp(-0.3, 1.0, L=10)
        r = np.abs(sig.x - 0.5)
        core = np.flatnonzero(_folded(r, 1.0, sig.N))
        assert core.size > 10
        assert np.allclose(np.abs(sig.samples[core]), np.abs(r[core] ** -0.3 * np.sin(1.0 / r[core])))
        assert np.all(sig.samples[core[core % 2 == 0]] >= 0)
        assert np.all(sig.samples[core[core % 2 == 1]] <= 0)

    @pytest.mark.parametrize("beta", [0.0, -1.0])
    def test_beta_must_be_positive(self, beta):
        with pytest.raises(InvalidParameterError):
            gen_chirp(0.5, beta)

    def test_fit_levels_bracket_the_resolution_limit(self):
        meta = gen_chirp(-0.3, 1.0).meta
        assert meta["fit_j_min"] == 9
        assert (meta["global_fit_j_min"], meta["global_fit_j_max"]) == (3, 10)
        assert meta["ps_truncation_level"] == 3

    def test_slow_chirp_fit_levels(self):
        meta = gen_chirp(-0.3, 0.5).meta
        assert meta["fit_j_min"] == 5
        assert (meta["global_fit_j_min"], meta["global_fit_j_max"]) == (3, 6)
        assert meta["ps_truncation_level"] == 3

    @pytest.mark.parametrize("gen", [
        lambda x0: gen_cusp(-0.4, x0=x0, L=8),
        lambda x0: gen_chirp(-0.3, 1.0, x0=x0, L=8),
        lambda x0: gen_cusp_plus_chirp(-0.2, -0.3, 1.0, x0=x0, L=8),
    ])
    def test_x0_on_a_sample(self, gen):
        sig = gen(X0_ON_QUARTER)
        assert np.all(np.isfinite(sig.samples))
        assert sig.samples[128] == 0.0

    def test_theoretical_profile(self):
        prof = theoretical_profile(gen_chirp(-0.3, 1.0, L=8).meta)
        assert prof.h_of_p(4.0) == -0.3
        assert prof.p0 == pytest.approx(10 / 3)
        assert prof.beta_osc == 1.0
        assert prof.shifted(2.0, 1.0) == pytest.approx(1.7)


# ============================================================
# COMBS
# ============================================================

class TestLacunaryComb:
    def test_tooth_value(self):
        sig = gen_lacunary_comb(CombSpec(1.0, 2.0), L=10)
        assert sig.x0 == 0.0
        i = _index_of(sig.x, 0.125 + 0.5 / 1024)
        assert sig.samples[i] == 0.125
        assert sig.meta["l_max"] == 5

    def test_tooth_l3_spans_sixteen_samples(self):
        sig = gen_lacunary_comb(CombSpec(1.0, 2.0), L=10)
        assert np.all(sig.samples[128:144] == 0.125)
        assert sig.samples[127] == 0.0
        assert sig.samples[144] == 0.0

    def test_theoretical_profile(self):
        prof = theoretical_profile(gen_lacunary_comb(CombSpec(-0.2, 3.0), L=12).meta)
        assert prof.h_of_p(2.0) == pytest.approx(0.8)
        assert prof.h_of_p(1.0) == pytest.approx(1.8)
        assert prof.h_of_p(0.5) == pytest.approx(1.8)
        assert prof.p0 == pytest.approx(15.0)

    @pytest.mark.parametrize("alpha,gamma", [(0.5, 1.0), (0.5, 0.5), (-3.0, 3.0), (-4.0, 3.0)])
    def test_invalid_parameters(self, alpha, gamma):
        with pytest.raises(InvalidParameterError):
            CombSpec(alpha, gamma)

    def test_resolution_warning(self):
        assert gen_lacunary_comb(CombSpec(-0.2, 3.0), L=16).meta["resolution_warning"] is True
        # finest tooth l=2 is exactly eight samples wide
        assert gen_lacunary_comb(CombSpec(-0.2, 4.0), L=11).meta["resolution_warning"] is False

    def test_fit_levels(self, comb_steep):
        assert comb_steep.L == 20
        assert (comb_steep.meta["fit_j_min"], comb_steep.meta["fit_j_max"]) == (11, 16)
        assert comb_steep.meta["direct_fit_j_min"] == 15

    def test_leader_window_stops_below_the_first_teeth(self):
        meta = gen_lacunary_comb(CombSpec(0.3, 2.0), L=16).meta
        assert meta["fit_j_max"] == 16 - config.COMB_EDGE_LEVELS
        assert meta["fit_j_max"] - meta["fit_j_min"] + 1 == config.COMB_FIT_LEVELS
        assert meta["direct_fit_j_min"] == 10

    @pytest.mark.parametrize("alpha,gamma,L,first_tooth", [(0.3, 2.0, 16, 6), (-0.2, 3.0, 18, 4)])
    def test_support_measure_near_zero(self, alpha, gamma, L, first_tooth):
        sig = gen_lacunary_comb(CombSpec(alpha, gamma), L=L)
        two_a = 2.0 ** (1 - first_tooth)
        inside = (sig.x < two_a) & (sig.samples != 0)
        expected = sum(2.0 ** (-gamma * l) for l in range(first_tooth, sig.meta["l_max"] + 1))
        assert inside.sum() / sig.N == pytest.approx(expected, abs=1e-12)


class TestGeneralComb:
    def test_piece_index_uses_two_adic_valuation(self):
        family3 = AffineFamily([(0.0, 0.5), (1.0, 0.0), (2.0, 0.0)])
        assert family3.piece_index(12) == 2
        assert family3.piece_index(7) == 0
        assert AffineFamily([(0.0, 0.5), (1.0, 0.0)]).piece_index(12) == 0

    def test_cyclic_schedule_alternates_pieces(self):
        family = AffineFamily([(0.0, 0.5), (1.0, 0.0)], schedule="cyclic")
        assert [family.piece_index(l) for l in range(1, 7)] == [1, 0, 1, 0, 1, 0]

    def test_unknown_schedule_rejected(self):
        with pytest.raises(InvalidParameterError):
            AffineFamily([(0.0, 0.5)], schedule="random")

    def test_teeth_reaching_the_right_edge_are_dropped(self):
        # piece (0, 0.5) at l = 1 would fill [1/2, 1) and wrap onto x0 = 0
        sig = gen_general_comb(AffineFamily([(0.0, 0.5), (1.0, 0.0)]), L=10)
        assert np.all(sig.samples[sig.x >= 0.5] == 0.0)
        assert np.any(sig.samples[(sig.x >= 0.25) & (sig.x < 0.5)] != 0.0)

    def test_cyclic_family_resolves_both_pieces(self, two_piece_comb):
        assert two_piece_comb.meta["params"]["schedule"] == "cyclic"
        x = two_piece_comb.x
        # l = 2 (piece 0) is a quarter wide, l = 3 (piece 1) a 64th
        assert np.all(two_piece_comb.samples[(x >= 0.25) & (x < 0.5)] == 0.5)
        assert np.all(two_piece_comb.samples[(x >= 0.125) & (x < 0.125 + 2.0 ** -6)] == 1.0)

    def test_single_piece_matches_lacunary_comb(self):
        general = gen_general_comb(AffineFamily([(2.0, -0.2)], p0=15.0), L=12)
        lacunary = gen_lacunary_comb(CombSpec(-0.2, 3.0), L=12)
        assert np.array_equal(general.samples, lacunary.samples)

    def test_two_piece_profile(self):
        prof = theoretical_profile(gen_general_comb(AffineFamily([(0.0, 0.5), (1.0, 0.0)]), L=10).meta)
        assert prof.h_of_p(1.0) == pytest.approx(0.5)
        assert prof.h_of_p(2.0) == pytest.approx(0.5)
        assert prof.h_of_p(4.0) == pytest.approx(0.25)
        assert prof.h_of_p(8.0) == pytest.approx(0.125)

    def test_damping_divides_heights(self):
        plain = gen_general_comb(AffineFamily([(2.0, -0.2)], p0=15.0), L=12)
        damped = gen_general_comb(AffineFamily([(2.0, -0.2)], p0=15.0, damping=True), L=12)
        i = _index_of(plain.x, 0.25 + 0.5 / 4096)
        assert damped.samples[i] == pytest.approx(plain.samples[i] / 4)

    @pytest.mark.parametrize("pieces,p0", [
        ([], math.inf),
        ([(-1.0, 0.5)], math.inf),
        ([(2.0, -0.2)], math.inf),
    ])
    def test_invalid_families(self, pieces, p0):
        with pytest.raises(InvalidParameterError):
            AffineFamily(pieces, p0)


# ============================================================
# SELF-SIMILAR / CUSP + CHIRP / NOISE
# ============================================================

class TestSelfSimilar:
    def test_profile_value(self):
        n = 64
        spec = SelfSimilarSpec(0.5, 2.0, 2.0 + np.cos(2 * np.pi * np.arange(n) / n))
        sig = gen_selfsimilar(spec, x0=X0_ON_QUARTER, L=8)
        i = _index_of(sig.x, X0_ON_QUARTER + 0.25)
        # log(1/4) is a whole number of periods of omega
        assert sig.samples[i] == pytest.approx(1.5, abs=1e-9)

    @pytest.mark.parametrize("alpha", [0.5, -0.3])
    def test_x0_on_a_sample(self, alpha):
        sig = gen_selfsimilar(SelfSimilarSpec(alpha, 2.0, [1.0, 2.0, 3.0]), x0=X0_ON_QUARTER, L=8)
        assert np.all(np.isfinite(sig.samples))
        assert sig.samples[128] == 0.0

    def test_constant_profile_is_a_cusp(self):
        sig = gen_selfsimilar(SelfSimilarSpec(0.6, 2.0, [1.0]), L=10)
        assert np.allclose(sig.samples, gen_cusp(0.6, L=10).samples, rtol=1e-15, atol=0)

    def test_complex_exponent(self):
        sig = gen_selfsimilar(complex_exponent_spec(0.5, 2.0), L=10)
        r = np.abs(sig.x - 0.5)
        assert np.allclose(sig.samples, r ** 0.5 * np.cos(2.0 * np.log(r)), atol=1e-3)

    def test_omega_minus_defaults_to_plus(self):
        spec = SelfSimilarSpec(0.4, 3.0, [1.0, 2.0])
        assert np.array_equal(spec.omega_minus, spec.omega_plus)

    @pytest.mark.parametrize("alpha,ratio", [(-1.0, 2.0), (0.5, 1.0)])
    def test_invalid(self, alpha, ratio):
        with pytest.raises(InvalidParameterError):
            SelfSimilarSpec(alpha, ratio, [1.0])


class TestCuspPlusChirp:
    def test_valid_chain(self, cusp_chirp):
        prof = theoretical_profile(cusp_chirp.meta)
        assert prof.h_of_p(2.0) == -0.3
        assert prof.shifted(2.0, 0.3) == pytest.approx(0.1)

    def test_chain_violation_rejected(self):
        with pytest.raises(InvalidParameterError):
            gen_cusp_plus_chirp(-0.25, -0.3, 0.1)


class TestNoise:
    def test_deterministic(self):
        assert np.array_equal(gen_wgn(10, seed=3).samples, gen_wgn(10, seed=3).samples)

    def test_seeds_differ(self):
        assert not np.array_equal(gen_wgn(10, seed=3).samples, gen_wgn(10, seed=4).samples)

    def test_moments(self):
        sig = gen_wgn(16, seed=0)
        assert abs(sig.samples.mean()) < 4 / math.sqrt(sig.N)
        assert sig.samples.std() == pytest.approx(1.0, abs=0.02)

    def test_theoretical_profile(self):
        prof = theoretical_profile(gen_wgn(8).meta)
        assert prof.p0 == 0.0
        assert prof.eta_of_p(2.0) == -1.0


# ============================================================
# PROFILE INVARIANTS
# ============================================================

REFERENCE_METAS = [
    ("cusp", {"alpha": 0.6}),
    ("cusp", {"alpha": -0.4}),
    ("chirp", {"alpha": -0.3, "beta": 1.0}),
    ("comb", {"alpha": -0.2, "gamma": 3.0}),
    ("comb", {"alpha": 0.3, "gamma": 2.0}),
    ("general_comb", {"pieces": [[0.0, 0.5], [1.0, 0.0]]}),
    ("general_comb", {"pieces": [[0.0, 0.5], [1.0, 0.0], [3.0, -0.4]], "p0": 4.0}),
    ("selfsimilar", {"alpha": 0.4, "beta": 3.0}),
    ("cusp_plus_chirp", {"gamma": -0.2, "alpha": -0.3, "beta": 1.0}),
]


@pytest.mark.parametrize("kind,params", REFERENCE_METAS)
def test_profile_is_monotone_concave_and_bounded(kind, params):
    prof = theoretical_profile(generate(kind, params, L=10).meta)
    rs = [r for r in np.linspace(0.02, 4.0, 200) if prof.defined_at(1.0 / r)]
    hs = [prof.h_of_p(1.0 / r) for r in rs]
    # nonincreasing in p == nondecreasing in r = 1/p
    assert all(b >= a - 1e-12 for a, b in zip(hs, hs[1:]))
    slopes = [(hs[i + 1] - hs[i]) / (rs[i + 1] - rs[i]) for i in range(len(rs) - 1)]
    assert all(b <= a + 1e-9 for a, b in zip(slopes, slopes[1:]))
    assert all(h >= -r - 1e-12 for r, h in zip(rs, hs))


@pytest.mark.parametrize("kind,params", REFERENCE_METAS + [("wgn", {"seed": 1})])
def test_generators_are_pure(kind, params):
    a = generate(kind, params, L=10)
    b = generate(kind, params, L=10)
    assert np.array_equal(a.samples, b.samples)
    assert a.meta == b.meta
