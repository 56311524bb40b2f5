import math

import numpy as np
import pytest

from ineqbridge import (
    DiscreteDist,
    GammaParams,
    GHypoParams,
    discrete_shift_scale,
    gamma_sample,
    gamma_survival,
    ghypo_cdf,
    ghypo_pdf,
    integrate_semi_infinite,
    reg_gamma_q,
)
from ineqbridge.distributions import _ghypo_cdf_convolution

from helpers import erfc_series, hypoexp_cdf


class TestParams:
    def test_gamma_validation(self):
        with pytest.raises(ValueError):
            GammaParams(0.0, 1.0)
        with pytest.raises(ValueError):
            GammaParams(1.0, -2.0)
        with pytest.raises(ValueError):
            GammaParams(math.inf, 1.0)

    def test_ghypo_validation(self):
        with pytest.raises(ValueError):
            GHypoParams(1.0, 1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            GHypoParams(1.0, 1.0, 1.0, math.nan)


class TestGammaSurvival:
    def test_exponential_median(self):
        assert gamma_survival(GammaParams(1.0, 1.0), math.log(2.0)) == pytest.approx(0.5, abs=1e-14)

    def test_at_zero(self):
        assert gamma_survival(GammaParams(2.0, 1.0), 0.0) == 1.0

    def test_half_shape_vs_erfc_oracle(self):
        got = gamma_survival(GammaParams(0.5, 2.0), 0.5)
        assert got == pytest.approx(erfc_series(1.0), abs=1e-12)

    def test_negative_x_rejected(self):
        with pytest.raises(ValueError):
            gamma_survival(GammaParams(1.0, 1.0), -0.5)


class TestGammaSample:
    def test_deterministic_given_seed(self):
        p = GammaParams(0.7, 2.0)
        a = gamma_sample(p, np.random.default_rng(123), 50)
        b = gamma_sample(p, np.random.default_rng(123), 50)
        assert np.array_equal(a, b)

    def test_mean_large_shape(self):
        x = gamma_sample(GammaParams(5.0, 1.0), np.random.default_rng(7), 10 ** 6)
        assert abs(x.mean() - 5.0) <= 5.0 * math.sqrt(5.0 / 10 ** 6)

    def test_variance_small_shape(self):
        x = gamma_sample(GammaParams(0.5, 1.0), np.random.default_rng(8), 10 ** 6)
        assert x.var(ddof=1) == pytest.approx(0.5, rel=0.01)
        assert (x >= 0).all()

    def test_count_validation(self):
        with pytest.raises(ValueError):
            gamma_sample(GammaParams(1.0, 1.0), np.random.default_rng(0), 0)

    def test_tilted_distribution_identity(self):
        # E[1{X <= t} e^(-zX)] / L(z) must match the gamma law with rate beta + z
        p = GammaParams(2.0, 1.5)
        z = 0.8
        rng = np.random.default_rng(42)
        x = gamma_sample(p, rng, 400_000)
        lap = (p.beta / (p.beta + z)) ** p.alpha
        tilted = GammaParams(p.alpha, p.beta + z)
        for t in (0.3, 0.9, 1.8):
            w = np.exp(-z * x) * (x <= t)
            est = w.mean() / lap
            se = w.std(ddof=1) / (lap * math.sqrt(x.size))
            assert abs(est - (1.0 - gamma_survival(tilted, t))) <= 4.0 * se


class TestGHypoCdf:
    def test_gamma_case_when_rates_match(self):
        got = ghypo_cdf(GHypoParams(1.0, 1.0, 1.0, 1.0), 2.0)
        assert got == pytest.approx(1.0 - 3.0 * math.exp(-2.0), abs=1e-12)

    def test_two_exponential_oracle(self):
        got = ghypo_cdf(GHypoParams(1.0, 1.0, 1.0, 2.0), 1.0)
        oracle = hypoexp_cdf(1.0, 2.0, 1.0)
        assert oracle == pytest.approx(0.3995764008937280, abs=1e-15)
        assert got == pytest.approx(oracle, abs=1e-12)

    def test_at_zero(self):
        assert ghypo_cdf(GHypoParams(3.0, 0.5, 1.2, 4.0), 0.0) == 0.0

    def test_component_order_is_irrelevant(self):
        a = ghypo_cdf(GHypoParams(2.0, 0.8, 1.0, 1.5), 1.3)
        b = ghypo_cdf(GHypoParams(1.0, 1.5, 2.0, 0.8), 1.3)
        assert a == pytest.approx(b, rel=1e-13)

    def test_gamma_reduction_general_shapes(self):
        g = GHypoParams(2.5, 1.7, 1.5, 1.7)
        for t in (0.2, 1.0, 3.0, 8.0):
            assert ghypo_cdf(g, t) == pytest.approx(
                1.0 - reg_gamma_q(4.0, 1.7 * t), abs=1e-10)

    def test_monotone_and_reaches_one(self):
        g = GHypoParams(2.0, 0.8, 1.0, 1.5)
        ts = np.linspace(0.0, 10.0 * g.mean, 300)
        vals = ghypo_cdf(g, ts)
        assert (np.diff(vals) >= -1e-12).all()
        assert vals[-1] == pytest.approx(1.0, abs=1e-9)

    def test_convolution_route_matches_series(self):
        # straddle the series budget so both evaluation routes are exercised
        g = GHypoParams(5.0, 300.0, 2.0, 1.0)
        for t in (0.5, 2.0, 9.0):
            series_val = ghypo_cdf(g, t)
            conv_val = _ghypo_cdf_convolution(g, t)
            assert conv_val == pytest.approx(series_val, abs=2e-9)

    def test_empirical_cdf_within_dkw_bound(self):
        rng = np.random.default_rng(31)
        n = 10 ** 5
        g = GHypoParams(2.0, 0.8, 1.0, 1.5)
        draws = (gamma_sample(GammaParams(g.alpha1, g.beta1), rng, n)
                 + gamma_sample(GammaParams(g.alpha2, g.beta2), rng, n))
        draws.sort()
        grid = np.quantile(draws, np.linspace(0.005, 0.995, 200))
        ecdf = np.searchsorted(draws, grid, side="right") / n
        model = ghypo_cdf(g, grid)
        bound = math.sqrt(math.log(2.0 / 1e-6) / (2.0 * n))
        assert np.max(np.abs(ecdf - model)) <= bound

    def test_negative_t_rejected(self):
        with pytest.raises(ValueError):
            ghypo_cdf(GHypoParams(1.0, 1.0, 1.0, 2.0), -1.0)


class TestGHypoPdf:
    def test_gamma_case_density(self):
        assert ghypo_pdf(GHypoParams(1.0, 1.0, 1.0, 1.0), 1.0) == pytest.approx(
            math.exp(-1.0), abs=1e-13)

    def test_matches_cdf_derivative(self):
        g = GHypoParams(2.0, 0.8, 1.0, 1.5)
        h = 1e-5
        fd = (ghypo_cdf(g, 1.3 + h) - ghypo_cdf(g, 1.3 - h)) / (2.0 * h)
        assert ghypo_pdf(g, 1.3) == pytest.approx(fd, abs=1e-6)

    def test_normalization(self):
        g = GHypoParams(3.5, 2.0, 0.7, 0.4)
        r = integrate_semi_infinite(lambda t: ghypo_pdf(g, t), 1e-12, abs_tol=1e-10)
        assert r.value == pytest.approx(1.0, abs=1e-9)

    def test_t_domain(self):
        with pytest.raises(ValueError):
            ghypo_pdf(GHypoParams(1.0, 1.0, 1.0, 2.0), 0.0)


class TestDiscreteDist:
    def test_canonicalization_merges_equal_values(self):
        d = DiscreteDist([(2.0, 0.25), (1.0, 0.5), (2.0, 0.25)])
        assert d.atoms == ((1.0, 0.5), (2.0, 0.5))

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ValueError):
            DiscreteDist([(1.0, 0.5), (2.0, 0.4)])
        with pytest.raises(ValueError):
            DiscreteDist([])
        with pytest.raises(ValueError):
            DiscreteDist([(-1.0, 1.0)])

    def test_survival_uses_closed_left_limit(self):
        d = DiscreteDist([(1.0, 0.25), (3.0, 0.75)])
        assert d.survival(1.0) == 1.0          # P(X >= 1) includes the atom at 1
        assert d.survival(1.0 + 1e-12) == 0.75
        assert d.survival(3.0) == 0.75
        assert d.survival(3.5) == 0.0
        assert d.survival(0.0) == 1.0

    def test_mean(self):
        d = DiscreteDist([(0.0, 0.5), (2.0, 0.5)])
        assert d.mean() == 1.0


class TestShiftScale:
    def test_identity(self):
        d = DiscreteDist([(1.0, 0.5), (3.0, 0.5)])
        assert discrete_shift_scale(d, 1.0, 0.0) == d

    def test_scale(self):
        d = DiscreteDist([(1.0, 0.5), (3.0, 0.5)])
        assert discrete_shift_scale(d, 2.0, 0.0) == DiscreteDist([(2.0, 0.5), (6.0, 0.5)])

    def test_shift(self):
        d = DiscreteDist([(1.0, 0.5), (3.0, 0.5)])
        assert discrete_shift_scale(d, 1.0, 1.0) == DiscreteDist([(2.0, 0.5), (4.0, 0.5)])

    def test_domain_errors(self):
        d = DiscreteDist([(1.0, 1.0)])
        with pytest.raises(ValueError):
            discrete_shift_scale(d, 0.0, 0.0)
        with pytest.raises(ValueError):
            discrete_shift_scale(d, 1.0, -1.0)
