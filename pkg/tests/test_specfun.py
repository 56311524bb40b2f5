import math

import mpmath as mp
import numpy as np
import pytest

from ineqbridge import kummer_1f1, log_gamma, log_humbert_phi2, log_kummer_1f1, reg_gamma_q

from helpers import erfc_series, mp_1f1_taylor, mp_phi2_unit, mp_reg_q

# frozen oracle outputs (recomputed below to guard the freeze itself)
ERFC_1 = 0.15729920705028513
F1F1_NEG20 = 0.04496869645419860446


class TestLogGamma:
    def test_known_points(self):
        assert log_gamma(1.0) == 0.0
        assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-13)
        assert log_gamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-13)

    def test_domain_errors(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                log_gamma(bad)

    def test_wide_range_accuracy(self):
        import mpmath as mp
        for s in (1e-3, 0.02, 0.77, 3.5, 41.0, 512.0, 1e3):
            ref = float(mp.loggamma(mp.mpf(s)))
            assert log_gamma(s) == pytest.approx(ref, rel=1e-13, abs=1e-15)


class TestRegGammaQ:
    def test_exponential_case(self):
        assert reg_gamma_q(1.0, 2.0) == pytest.approx(math.exp(-2.0), abs=1e-14)

    def test_zero_argument(self):
        for s in (0.3, 1.0, 7.5, 900.0):
            assert reg_gamma_q(s, 0.0) == 1.0

    def test_half_shape_vs_erfc_oracle(self):
        oracle = erfc_series(1.0)
        assert oracle == pytest.approx(ERFC_1, abs=1e-15)
        assert reg_gamma_q(0.5, 1.0) == pytest.approx(oracle, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            reg_gamma_q(0.0, 1.0)
        with pytest.raises(ValueError):
            reg_gamma_q(-2.0, 1.0)
        with pytest.raises(ValueError):
            reg_gamma_q(1.0, -0.1)
        with pytest.raises(ValueError):
            reg_gamma_q(1.0, math.nan)

    def test_array_input_matches_scalar(self):
        xs = np.array([0.0, 0.3, 2.0, 11.0, 250.0])
        got = reg_gamma_q(3.2, xs)
        assert got.shape == xs.shape
        for x, g in zip(xs, got):
            assert g == reg_gamma_q(3.2, float(x))

    def test_against_extended_precision_grid(self):
        # covers both series and continued-fraction branches up to large shapes
        for s in (0.01, 0.5, 1.0, 3.7, 48.0, 1000.0, 1200.0):
            for x in (0.01, 0.5, s * 0.5 + 0.1, s, s + 5.0, s * 2.0, 1e4):
                assert reg_gamma_q(s, x) == pytest.approx(mp_reg_q(s, x), abs=1e-12)

    def test_monotone_in_x_and_s(self):
        xs = np.linspace(0.0, 40.0, 200)
        for s in (0.4, 1.0, 6.0, 60.0):
            q = reg_gamma_q(s, xs)
            assert (np.diff(q) <= 1e-15).all()
        ss = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0]
        for x in (0.3, 2.0, 9.0):
            vals = [reg_gamma_q(s, x) for s in ss]
            assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))

    def test_recurrence(self):
        # Q(s+1,x) = Q(s,x) + x^s e^(-x) / Gamma(s+1)
        for s in (0.25, 1.0, 3.0, 17.0, 400.0):
            for x in (0.1, 1.0, s * 0.8 + 0.2, s + 3.0, 2.0 * s + 10.0):
                step = math.exp(s * math.log(x) - x - math.lgamma(s + 1.0))
                assert reg_gamma_q(s + 1.0, x) == pytest.approx(
                    reg_gamma_q(s, x) + step, abs=1e-11)


class TestKummer1F1:
    def test_unit_at_zero(self):
        assert kummer_1f1(2.0, 3.0, 0.0) == 1.0

    def test_exponential_identity(self):
        assert kummer_1f1(1.0, 2.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-13)

    def test_negative_argument_vs_taylor_oracle(self):
        oracle = float(mp_1f1_taylor(1.5, 4.0, -20.0, terms=400))
        assert oracle == pytest.approx(F1F1_NEG20, rel=1e-15)
        assert kummer_1f1(1.5, 4.0, -20.0) == pytest.approx(oracle, rel=1e-10)

    def test_exercised_range_vs_oracle(self):
        for a, b, x in [(0.5, 2.0, 37.0), (3.0, 9.5, -120.0), (12.0, 61.0, 500.0),
                        (4.0, 41.0, -500.0), (0.0, 5.0, 10.0), (2.5, 20.0, -3.3)]:
            ref = mp_1f1_taylor(a, b, x, terms=3000)
            assert kummer_1f1(a, b, x) == pytest.approx(float(ref), rel=1e-10)

    def test_reflection_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            a = rng.uniform(0.0, 8.0)
            b = a + rng.uniform(0.5, 30.0)
            x = rng.uniform(0.1, 60.0)
            lhs = kummer_1f1(a, b, -x)
            rhs = math.exp(-x) * kummer_1f1(b - a, b, x)
            assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_overflow_names_arguments(self):
        with pytest.raises(OverflowError) as exc:
            kummer_1f1(3.0, 5.0, 800.0)
        msg = str(exc.value)
        assert "3.0" in msg and "5.0" in msg and "800.0" in msg

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            kummer_1f1(1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            kummer_1f1(1.0, -2.0, 1.0)
        with pytest.raises(ValueError):
            kummer_1f1(-1.0, 2.0, 1.0)

    def test_log_form_large_argument_branch(self):
        # arguments past the series budget switch to the large-x expansion
        a, b = 3.0, 79.0
        for y in (6.0e4, 3.0e5):
            ref = float(mp.log(mp.hyp1f1(a, b, mp.mpf(y))))
            assert log_kummer_1f1(a, b, y) == pytest.approx(ref, rel=1e-10)


class TestHumbertPhi2:
    def test_matches_reference_series(self):
        for a, c, x, y in [(1.0, 3.0, 1.0, 2.0), (2.5, 7.0, 0.0, 4.0),
                           (4.0, 12.5, 3.3, 9.9), (0.7, 2.1, 8.0, 0.0)]:
            ref = float(mp_phi2_unit(a, c, x, y))
            assert math.exp(log_humbert_phi2(a, c, x, y)) == pytest.approx(ref, rel=1e-12)

    def test_reduces_to_1f1_when_x_is_zero(self):
        for c, y in [(4.0, 2.0), (11.0, 30.0)]:
            assert log_humbert_phi2(5.0, c, 0.0, y) == pytest.approx(
                log_kummer_1f1(1.0, c, y), rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            log_humbert_phi2(-1.0, 2.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            log_humbert_phi2(1.0, 2.0, -1.0, 1.0)
