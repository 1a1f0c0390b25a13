"""Young split, Ladyzhenskaya ratio, Gronwall bounds, perturbation budget."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from symflow.bounds import (
    NEG_INF,
    BoundCurve,
    BoundKind,
    apriori_bound,
    apriori_curve,
    ladyzhenskaya_ratio_2d,
    perturbation_budget,
    running_bound,
    young_split_gap,
    young_split_minimizer,
)


class TestYoungSplit:
    def test_degenerate_a_c_zero(self):
        for b in (0.0, 0.3, 2.0):
            assert young_split_gap(0.0, b, 0.0, 1.5) == pytest.approx(1.5 * b * b, rel=1e-15)

    def test_sharpness_at_unit_point(self):
        # a = c = 1, nu = 1: the gap vanishes at b* = 9 sqrt(2) / 16
        bstar = 9.0 * math.sqrt(2.0) / 16.0
        assert young_split_minimizer(1.0, 1.0, 1.0) == pytest.approx(bstar, rel=1e-15)
        assert abs(young_split_gap(1.0, bstar, 1.0, 1.0)) < 1e-12

    def test_minimizer_matches_1d_optimization_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            a = 0.1 + 2.0 * rng.random()
            c = 0.1 + 2.0 * rng.random()
            nu = 0.5 + 1.5 * rng.random()
            bstar = young_split_minimizer(a, c, nu)
            res = minimize_scalar(lambda b: young_split_gap(a, b, c, nu),
                                  bounds=(0.0, 10.0 * bstar + 1.0), method="bounded",
                                  options={"xatol": 1e-12})
            assert res.x == pytest.approx(bstar, rel=1e-5)
            assert res.fun >= -1e-12
            assert abs(young_split_gap(a, bstar, c, nu)) < 1e-12 * (1.0 + nu * bstar**2)

    def test_random_campaign_vectorized(self):
        rng = np.random.default_rng(7)
        n = 100_000
        a = 3.0 * rng.random(n)
        b = 4.0 * rng.random(n)
        c = 3.0 * rng.random(n)
        nu = 0.1 + 1.9 * rng.random(n)
        gap = young_split_gap(a, b, c, nu)
        rhs = nu * b * b + 27.0 / 128.0 / nu**3 * a * a * c**4
        assert np.all(gap >= -1e-12 * (1.0 + rhs))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError, match="viscosity"):
            young_split_gap(1.0, 1.0, 1.0, 0.0)
        with pytest.raises(ValueError, match="nonnegative"):
            young_split_gap(-1.0, 1.0, 1.0, 1.0)


class TestLadyzhenskayaRatio:
    def test_single_sine_closed_form(self):
        # ||f||_{L4}^4 = 3/8, ||f||^2 = 1/2, ||grad f||^2 = 2 pi^2:
        # ratio = (3/8) / (2 * (1/2) * 2 pi^2) = 3 / (16 pi^2)
        n = 64
        x = np.arange(n) / n
        f = np.sin(2 * np.pi * x)[:, None] * np.ones(n)[None, :]
        ratio = ladyzhenskaya_ratio_2d(f)
        assert ratio == pytest.approx(3.0 / (16.0 * np.pi**2), rel=1e-12)

    def test_product_sine_closed_form(self):
        # ||f||_{L4}^4 = 9/64, ||f||^2 = 1/4, ||grad f||^2 = 2 pi^2:
        # ratio = (9/64) / (2 * (1/4) * 2 pi^2) = 9 / (64 pi^2)
        n = 64
        x = np.arange(n) / n
        x1, x2 = np.meshgrid(x, x, indexing="ij")
        f = np.sin(2 * np.pi * x1) * np.sin(2 * np.pi * x2)
        ratio = ladyzhenskaya_ratio_2d(f)
        assert ratio == pytest.approx(9.0 / (64.0 * np.pi**2), rel=1e-12)

    def test_quadrature_oracle_cross_check(self):
        # independent physical-space quadrature of every norm in the ratio
        n = 64
        rng = np.random.default_rng(3)
        k = np.fft.fftfreq(n, d=1.0 / n)
        band = (np.abs(k)[:, None] <= 4) & (np.abs(k)[None, :] <= 4)
        band[0, 0] = False
        fhat = np.fft.fft2(rng.standard_normal((n, n)), norm="forward") * band
        f = np.fft.ifft2(fhat, norm="forward").real
        l2 = float(np.mean(f * f))
        l4 = float(np.mean(f**4))
        gx = np.fft.ifft2(2j * np.pi * k[:, None] * fhat, norm="forward").real
        gy = np.fft.ifft2(2j * np.pi * k[None, :] * fhat, norm="forward").real
        h1 = float(np.mean(gx * gx + gy * gy))
        assert ladyzhenskaya_ratio_2d(f) == pytest.approx(l4 / (2 * l2 * h1), rel=1e-10)

    def test_vector_field_accepted(self):
        n = 32
        x = np.arange(n) / n
        x1, x2 = np.meshgrid(x, x, indexing="ij")
        f = np.stack([np.sin(2 * np.pi * x2), np.cos(2 * np.pi * x1)])
        assert 0.0 < ladyzhenskaya_ratio_2d(f) < 1.0

    def test_rejections(self):
        with pytest.raises(ValueError, match="zero field"):
            ladyzhenskaya_ratio_2d(np.zeros((16, 16)))
        with pytest.raises(ValueError, match="mean-zero"):
            ladyzhenskaya_ratio_2d(np.ones((16, 16)) + 0.1 * np.sin(
                2 * np.pi * np.arange(16) / 16)[:, None])


class TestAprioriBound:
    def test_taylor_green_example(self):
        # u0 energy 1/2, nu = 1, w0 = 1: bound exponent 27/256
        lb = apriori_bound(1.0, 0.5, 1.0)
        assert lb == pytest.approx(27.0 / 256.0, rel=1e-15)
        assert math.exp(lb) == pytest.approx(1.1112313779996905, rel=1e-12)

    def test_zero_base_flow_gives_factor_one(self):
        assert apriori_bound(0.25, 0.0, 0.3) == pytest.approx(math.log(0.25), rel=1e-15)

    def test_small_viscosity_stays_in_log_space(self):
        lb = apriori_bound(1.0, 0.5, 0.1)
        assert lb == pytest.approx(1054.6875, rel=1e-12)
        assert math.isfinite(lb)

    def test_zero_perturbation_sentinel(self):
        assert apriori_bound(0.0, 0.5, 1.0) == NEG_INF

    def test_rejects_nonpositive_viscosity(self):
        with pytest.raises(ValueError):
            apriori_bound(1.0, 0.5, 0.0)


class TestRunningBound:
    def test_zero_base_flow_constant(self):
        t = np.linspace(0.0, 1.0, 11)
        curve = running_bound(t, np.zeros_like(t), 0.04, 0.5)
        assert curve.kind is BoundKind.RUNNING
        assert np.allclose(curve.log_bound, math.log(0.04), rtol=0, atol=1e-15)

    def test_constant_history_exactly_linear(self):
        q = 0.7
        nu = 0.25
        t = np.linspace(0.0, 2.0, 21)
        curve = running_bound(t, np.full_like(t, q), 1.0, nu)
        expected = 27.0 * q * t / (64.0 * nu**3)
        assert np.max(np.abs(curve.log_bound - expected)) < 1e-12 * np.max(expected + 1)

    def test_nondecreasing_and_below_apriori_for_decaying_history(self):
        # Taylor-Green-like history ||u||_{L4}^4 = (5/16) e^{-32 pi^2 nu t}
        nu = 0.05
        t = np.linspace(0.0, 1.0, 201)
        hist = 5.0 / 16.0 * np.exp(-32.0 * np.pi**2 * nu * t)
        curve = running_bound(t, hist, 1e-6, nu)
        assert np.all(np.diff(curve.log_bound) >= 0.0)
        assert np.all(curve.log_bound <= apriori_bound(1e-6, 0.5, nu))

    def test_rejects_unsorted_times_and_negative_history(self):
        with pytest.raises(ValueError, match="increasing"):
            running_bound([0.0, 0.2, 0.1], [1.0, 1.0, 1.0], 1.0, 1.0)
        with pytest.raises(ValueError, match="nonnegative"):
            running_bound([0.0, 0.1], [1.0, -1.0], 1.0, 1.0)

    @settings(max_examples=30, deadline=None)
    @given(lam=st.floats(0.25, 4.0), w0=st.floats(1e-8, 10.0))
    def test_scaling_in_w0(self, lam, w0):
        t = np.linspace(0.0, 1.0, 7)
        hist = np.linspace(0.3, 0.1, 7)
        base = running_bound(t, hist, w0, 0.5).log_bound
        scaled = running_bound(t, hist, lam**2 * w0, 0.5).log_bound
        assert np.max(np.abs(scaled - base - 2.0 * math.log(lam))) < 1e-9


class TestAprioriCurve:
    def test_unforced_constant(self):
        t = np.linspace(0.0, 1.0, 5)
        curve = apriori_curve(t, 0.01, 0.5, 0.2)
        assert np.all(curve.log_bound == apriori_bound(0.01, 0.5, 0.2))

    def test_forced_budget_uses_running_work_max(self):
        t = np.linspace(0.0, 1.0, 5)
        work = np.array([0.0, 0.2, 0.1, 0.4, 0.3])
        curve = apriori_curve(t, 1.0, 0.5, 1.0, work_history=work)
        budgets = 0.5 + np.maximum.accumulate(work)
        expected = 27.0 / 64.0 * budgets**2
        assert np.allclose(curve.log_bound, expected, rtol=1e-14)


class TestPerturbationBudget:
    def test_floor_constant_and_delta_max(self):
        b = perturbation_budget(0.5, 1.0)
        assert b.C == pytest.approx(27.0 / 256.0, rel=1e-15)
        assert b.log_delta_max == pytest.approx(-27.0 / 256.0, rel=1e-15)
        assert b.delta_max == pytest.approx(math.exp(-27.0 / 256.0), rel=1e-12)
        assert b.delta_max == pytest.approx(0.8999025943634562, rel=1e-12)

    def test_half_viscosity_example(self):
        b = perturbation_budget(0.5, 0.5)
        assert b.C / 0.5**4 == pytest.approx(1.6875, rel=1e-12)
        assert b.delta_max == pytest.approx(math.exp(-1.6875), rel=1e-12)
        assert b.delta_max == pytest.approx(0.18498139990730428, rel=1e-12)

    def test_large_viscosity_limit(self):
        b = perturbation_budget(0.5, 1e6, C=27.0 / 256.0)
        assert b.delta_max == pytest.approx(1.0, abs=1e-12)
        assert b.log_delta_max < 0.0

    def test_rejects_c_below_floor(self):
        with pytest.raises(ValueError, match="floor"):
            perturbation_budget(0.5, 1.0, C=0.05)

    def test_budget_invariant_log_space(self):
        b = perturbation_budget(2.0, 0.3)
        assert b.log_delta_max <= -b.C / 0.3**4 + 1e-15


def test_bound_curve_rejects_decreasing():
    with pytest.raises(ValueError, match="nondecreasing"):
        BoundCurve(np.array([0.0, 1.0]), np.array([1.0, 0.0]), BoundKind.RUNNING)
