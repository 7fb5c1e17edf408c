import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kitaev_sensing import ModelParams, fit_exponent, scaling_sweep

SIZES = (400, 600, 800, 1000)


class TestFitExponent:
    def test_quadratic(self):
        fit = fit_exponent([(L, 5.0 * L**2) for L in SIZES])
        assert fit.exponent == pytest.approx(2.0, abs=1e-10)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.prefactor == pytest.approx(5.0, rel=1e-9)

    def test_sixth_power(self):
        fit = fit_exponent([(L, 1e-14 * L**6 / math.pi**6) for L in SIZES])
        assert fit.exponent == pytest.approx(6.0, abs=1e-10)

    # r^2 is ill-conditioned for nearly flat data, so keep the slope away from zero
    @given(st.floats(-8, 8).filter(lambda b: abs(b) > 0.1), st.floats(-20, 20))
    def test_synthetic_power_laws(self, beta, log_a):
        fit = fit_exponent([(L, math.exp(log_a + beta * math.log(L))) for L in (10, 30, 100, 300)])
        assert fit.exponent == pytest.approx(beta, abs=1e-10)
        assert fit.log_prefactor == pytest.approx(log_a, abs=1e-8)
        assert 1 - 1e-12 <= fit.r_squared <= 1

    def test_r_squared_below_one_for_noise(self):
        fit = fit_exponent([(10, 1.0), (20, 3.0), (40, 2.0), (80, 9.0)])
        assert 0 <= fit.r_squared < 1

    def test_keeps_points(self):
        pts = [(4, 1.0), (8, 2.0), (16, 4.0)]
        assert fit_exponent(pts).points == pts

    @pytest.mark.parametrize(
        "pts",
        [
            [(4, 1.0), (8, 2.0)],
            [(4, 1.0), (4, 2.0), (8, 3.0)],
            [(4, 1.0), (8, 0.0), (16, 3.0)],
            [(4, 1.0), (8, -2.0), (16, 3.0)],
            [(0, 1.0), (8, 2.0), (16, 3.0)],
        ],
    )
    def test_rejects(self, pts):
        with pytest.raises(ValueError):
            fit_exponent(pts)


class TestScalingSweep:
    def test_f_dd_heisenberg(self):
        assert scaling_sweep(ModelParams(2.0, 1e-7), SIZES, "f_dd").exponent == pytest.approx(2.0, abs=0.02)

    def test_g_super_heisenberg(self):
        assert scaling_sweep(ModelParams(2.0, 1e-7), SIZES, "g").exponent == pytest.approx(6.0, abs=0.1)

    def test_f_dd_large_delta(self):
        assert scaling_sweep(ModelParams(2.0, 0.7), SIZES, "f_dd").exponent == pytest.approx(1.0, abs=0.05)

    def test_off_diagonal(self):
        fit = scaling_sweep(ModelParams(2.0, 1e-10), range(1000, 10001, 1000), "f_md_abs")
        assert fit.exponent == pytest.approx(4.0, abs=0.05)

    def test_default_quantity_and_sizes(self):
        fit = scaling_sweep(ModelParams(2.0, 1e-7))
        assert [L for L, _ in fit.points] == list(SIZES)

    def test_identically_zero(self):
        with pytest.raises(ValueError):
            scaling_sweep(ModelParams(2.0, 0.0), SIZES, "f_mm")

    def test_unknown_quantity(self):
        with pytest.raises(ValueError):
            scaling_sweep(ModelParams(2.0, 0.1), SIZES, "f_xx")

    def test_bad_sizes(self):
        with pytest.raises(ValueError):
            scaling_sweep(ModelParams(2.0, 0.1), (400, 601, 800), "f_dd")
