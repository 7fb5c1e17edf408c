import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kitaev_sensing import ModelParams, classify_regime, leading_order, odd_zeta_partial, qfim


class TestLeadingOrder:
    def test_f_dd(self):
        assert leading_order(ModelParams(2.0, 1e-7), 1000).f_dd_lead == 125000.0

    def test_f_mm(self):
        lead = leading_order(ModelParams(2.0, 1e-7), 1000).f_mm_lead
        assert lead == pytest.approx(1e4 / math.pi**6, rel=1e-14)
        assert lead == pytest.approx(10.40, abs=0.005)

    def test_vanishes_at_zero_delta(self):
        lo = leading_order(ModelParams(2.0, 0.0), 500)
        assert lo.f_mm_lead == 0 and lo.f_md_lead == 0 and lo.g_lead == 0

    def test_never_raises_out_of_regime(self):
        lo = leading_order(ModelParams(-7.0, 3.0), 2)
        assert lo.f_dd_lead == 0.5

    @given(st.floats(-1, 1).filter(lambda d: d != 0), st.integers(1, 5000))
    def test_signs(self, delta, half):
        lo = leading_order(ModelParams(2.0, delta), 2 * half)
        assert lo.f_mm_lead >= 0 and lo.f_dd_lead > 0 and lo.g_lead >= 0
        assert math.copysign(1, lo.f_md_lead) == -math.copysign(1, delta)

    @pytest.mark.parametrize("L", [400, 600, 800, 1000, 2000])
    def test_f_dd_against_exact(self, L):
        for delta in (0.0, 1e-7, 1e-6):
            exact = qfim(ModelParams(2.0, delta), L).f_dd
            lead = leading_order(ModelParams(2.0, delta), L).f_dd_lead
            assert abs(exact - lead) / lead < 2 / L

    @pytest.mark.parametrize("L", [400, 600, 800, 1000])
    def test_f_mm_dominant_term(self, L):
        p = ModelParams(2.0, 1e-7)
        assert 0.95 <= qfim(p, L).f_mm / leading_order(p, L).f_mm_lead <= 1.05

    def test_f_mm_all_mode_constant(self):
        # summing every odd mode, not just the dominant one, gives pi^6/960
        p = ModelParams(2.0, 1e-9)
        ratio = qfim(p, 2000).f_mm / leading_order(p, 2000).f_mm_lead
        assert ratio == pytest.approx(math.pi**6 / 960, rel=1e-3)


class TestOddZeta:
    def test_small(self):
        assert odd_zeta_partial(1) == 1.0
        assert odd_zeta_partial(2) == pytest.approx(10 / 9, rel=1e-15)

    def test_limit(self):
        assert abs(odd_zeta_partial(10**6) - math.pi**2 / 8) < 3e-7

    @pytest.mark.parametrize("n", [1, 10, 1000, 10**5])
    def test_tail_bound(self, n):
        gap = math.pi**2 / 8 - odd_zeta_partial(n)
        assert 0 < gap < 1 / (4 * n)

    def test_monotone(self):
        values = [odd_zeta_partial(n) for n in range(1, 50)]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("n", [0, -3])
    def test_rejects_nonpositive(self, n):
        with pytest.raises(ValueError):
            odd_zeta_partial(n)


class TestRegimes:
    @pytest.mark.parametrize(
        "quantity, delta, label",
        [
            ("f_mm", 1e-7, "low"),
            ("g", 0.7, "high"),
            ("f_dd", 1e-4, "intermediate"),
            ("f_mm", 1e-3, "intermediate"),
            ("f_mm", 1e-2, "intermediate"),
            ("f_mm", 0.011, "high"),
            ("f_dd", 1e-5, "intermediate"),
            ("g", 0.03, "intermediate"),
            ("g", 9.9e-6, "low"),
            ("f_dd", 0.0, "low"),
        ],
    )
    def test_labels(self, quantity, delta, label):
        r = classify_regime(quantity, delta)
        assert r.label == label and r.quantity == quantity

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            classify_regime("g", -1e-3)

    def test_rejects_unknown_quantity(self):
        with pytest.raises(ValueError):
            classify_regime("f_md", 0.1)
