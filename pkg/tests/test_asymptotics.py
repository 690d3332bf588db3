from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import mp_binomial_coeff, parseval_coeff
from stabspec import asymptotics as asy
from stabspec.asymptotics import Regime
from stabspec.errors import DomainError

SQRT_3_PI = math.sqrt(3 / math.pi)


# ---------------------------------------------------------------------------
# Regimes
# ---------------------------------------------------------------------------


def test_classify_subcritical_example():
    rep = asy.classify(2, 1, 3)
    assert rep.regime is Regime.SUBCRITICAL
    assert rep.rho == pytest.approx(0.5, rel=1e-15)
    assert rep.decay_base == pytest.approx(0.25, rel=1e-14)
    assert rep.limit_constant == pytest.approx(SQRT_3_PI, rel=1e-14)
    assert rep.limit_constant == pytest.approx(0.9772050, abs=1e-7)


def test_classify_critical_exact_and_float():
    exact = asy.classify(4, 1, r2=Fraction(25, 4))
    assert exact.regime is Regime.CRITICAL
    assert asy.classify(4, 1, 2.5).regime is Regime.CRITICAL
    assert exact.limit_constant == pytest.approx(5 / 6, rel=1e-14)
    assert exact.decay_base == pytest.approx(0.125, rel=1e-14)
    assert asy.regime_ratio(4, 1, r2=Fraction(25, 4)) == 1


def test_classify_supercritical():
    rep = asy.classify(10, 1, 2.1)
    a = 2 / (2.1 + math.sqrt(2.1**2 - 4))
    assert rep.regime is Regime.SUPERCRITICAL
    assert rep.decay_base == pytest.approx(a**9, rel=1e-13)
    assert rep.limit_constant == pytest.approx(1 / math.sqrt(1 - 4 / 4.41), rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(k1=st.integers(1, 40), k2=st.integers(1, 40), r=st.floats(2.01, 12))
def test_classify_symmetric_and_exhaustive(k1, k2, r):
    a, b = asy.classify(k1, k2, r), asy.classify(k2, k1, r)
    assert a == b
    rho = (k1 + k2) ** 2 / (r * r * k1 * k2)
    expect = (Regime.SUBCRITICAL if rho < 1 - 1e-12 else
              Regime.SUPERCRITICAL if rho > 1 + 1e-12 else Regime.CRITICAL)
    assert a.regime is expect


def test_classify_rejects_axis_and_small_r():
    with pytest.raises(DomainError):
        asy.classify(3, 0, 3)
    with pytest.raises(DomainError):
        asy.classify(2, 1, 2.0)


def test_lemma_gap_for_supercritical_triples():
    # the smooth-point rate lies strictly below the intersecting-zero rate
    for k1, k2, r in [(10, 1, 2.1), (5, 1, 2.3), (3, 1, 2.2)]:
        rep = asy.classify(k1, k2, r)
        assert rep.regime is Regime.SUPERCRITICAL
        K = k1 + k2
        smooth = K * math.log(K) - K * math.log(r) - k1 * math.log(k1) - k2 * math.log(k2)
        assert smooth < rep.log_decay_base


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


def test_smooth_points_solve_their_equations():
    for k1, k2, r in [(2, 1, 3.0), (7, 3, 2.5), (1, 1, 10.0)]:
        sp = asy.smooth_points(k1, k2, r)
        assert max(map(abs, sp.residuals())) < 1e-14
        assert max(map(abs, sp.gradient_residuals(k1, k2))) < 1e-13


def test_intersecting_zero_determinant():
    for r in (2.1, 3.0, 10.0):
        assert asy.intersecting_zero_determinant(r) == pytest.approx(math.sqrt(1 - 4 / r**2), rel=1e-13)


# ---------------------------------------------------------------------------
# Scaled coefficients
# ---------------------------------------------------------------------------


def test_scaled_coeff_small_t_matches_oracle():
    t = 4
    c = parseval_coeff(8, 4, 3.0)
    assert asy.scaled_coeff(2, 1, 3, t) == pytest.approx(math.sqrt(t) * 4**t * c, rel=1e-12)


def test_subcritical_rate():
    # |scaled - limit| ~ C / t with C near (55/72) limit
    C_ref = 55 / 72 * SQRT_3_PI
    for t in (32, 64, 128, 256):
        C = abs(asy.scaled_coeff(2, 1, 3, t) - SQRT_3_PI) * t
        assert 0.5 * C_ref <= C <= 2 * C_ref


def test_critical_monotone_approach():
    vals = [asy.scaled_coeff(4, 1, 2.5, t) for t in (32, 64, 128, 256, 512)]
    errs = [v - 5 / 6 for v in vals]
    assert all(e > 0 for e in errs)
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_supercritical_fast_approach():
    lim = 1 / math.sqrt(1 - 4 / 4.41)
    assert asy.scaled_coeff(10, 1, 2.1, 64) == pytest.approx(lim, rel=1e-3)


def test_scaled_coeff_rejects_t0():
    with pytest.raises(DomainError):
        asy.scaled_coeff(2, 1, 3, 0)


# ---------------------------------------------------------------------------
# Corrected predictions
# ---------------------------------------------------------------------------


def test_stirling_binomial():
    exact = math.comb(100, 50)
    assert asy.stirling_binomial(1, 50, 2) == pytest.approx(exact, rel=1e-7)
    assert abs(asy.stirling_binomial(1, 50, 0) / exact - 1) > 1e-3
    e1 = abs(asy.stirling_binomial(Fraction(1, 2), 40, 1) / math.comb(60, 40) - 1)
    e2 = abs(asy.stirling_binomial(Fraction(1, 2), 40, 2) / math.comb(60, 40) - 1)
    assert e2 < e1 < 1e-3


def test_prediction_coefficients_r3():
    p = asy.prediction_coefficients(Fraction(1, 2), 3)
    assert p == (2, Fraction(-55, 18), Fraction(26065, 1296))
    # t -> 2t, normalized by the leading term
    assert (p[1] / 2 / p[0], p[2] / 4 / p[0]) == asy.MELCZER_COEFFS[:2]


def test_corrected_prediction_matches_reference_series():
    b0 = asy.prediction_coefficients(Fraction(1, 2), 3)[0]
    for t in (5, 10, 40):
        pred = asy.corrected_prediction(Fraction(1, 2), 3, 2 * t, 2) / b0
        ref = 1 + float(asy.MELCZER_COEFFS[0]) / t + float(asy.MELCZER_COEFFS[1]) / t**2
        assert pred == pytest.approx(ref, rel=1e-12)


def test_ctbt_lhs_approaches_prediction():
    # the next term is about 120/t^3 in relative size
    for t in (100, 400):
        lhs = asy.ctbt_lhs(Fraction(1, 2), 3, t)
        assert lhs == pytest.approx(asy.corrected_prediction(Fraction(1, 2), 3, t, 2), rel=300 / t**3)


def test_first_order_correction():
    assert asy.first_order_correction(2, 1, 3) == Fraction(55, 72)
    for k1, k2, r in [(3, 1, Fraction(5)), (2, 1, Fraction(5, 2)), (5, 2, Fraction(4))]:
        beta = Fraction(k2, k1)
        p = asy.prediction_coefficients(beta, r)
        assert asy.first_order_correction(k1, k2, r) == -p[1] / (p[0] * k1)


def test_scaled_prediction_tracks_scaled_coeff():
    for k1, k2, r in [(2, 1, 3), (3, 1, 5)]:
        t = 128
        exact = asy.scaled_coeff(k1, k2, r, t)
        err = [abs(asy.scaled_prediction(k1, k2, r, t, n) - exact) for n in (0, 1, 2)]
        assert err[2] < err[1] < err[0]
        assert err[2] < 3e-3 * err[0]
    assert asy.scaled_prediction(4, 1, 2.5, 64) == pytest.approx(5 / 6)


def test_melczer_reference():
    assert math.isfinite(asy.melczer_reference(1))
    res = []
    for t in (8, 16, 32, 64):
        exact = float(mp_binomial_coeff(2 * t, t, 3))
        res.append((exact / asy.melczer_reference(t) - 1) * t**5)
    # residual is O(t^-5): the scaled residual stays bounded and settles
    assert all(abs(v) < 2000 for v in res)
    steps = [abs(b / a) for a, b in zip(res, res[1:])]
    assert all(a > b for a, b in zip(steps, steps[1:]))
    with pytest.raises(DomainError):
        asy.melczer_reference(0)


def test_h_coefficients():
    assert asy.h_coefficients(0.5, 1.0, 0) == (0, 0)
    a = Fraction(3, 4)
    h1, h2 = asy.h_coefficients(Fraction(1, 2), a, 1)
    assert (h1, h2) == (-1 / a, 1 / a**2)
    from stabspec.largeparam import d_coefficient
    for beta, a in [(Fraction(1, 2), Fraction(1)), (Fraction(1, 3), Fraction(5, 4))]:
        for j in range(7):
            h1, h2 = asy.h_coefficients(beta, a, j)
            assert h1 == d_coefficient(j, 1, beta, a)
            assert h2 == d_coefficient(j, 2, beta, a)
            assert asy.h2_expanded(beta, a, j) == h2


# ---------------------------------------------------------------------------
# Binomial sum
# ---------------------------------------------------------------------------


def test_binomial_sum_matches_exact_terms():
    t = 6
    exact = sum(asy.binomial_sum_term(2, 1, t, i) for i in range(600))
    assert asy.binomial_sum(2, 1, t) == pytest.approx(float(exact), rel=1e-13)


def test_binomial_sum_limit_and_domain():
    assert asy.binomial_sum_limit(2, 1) == Fraction(3, 2)
    with pytest.raises(DomainError):
        asy.binomial_sum(1, 1, 10)
    with pytest.raises(DomainError):
        asy.binomial_sum(1, 2, 10)


def test_binomial_sum_moves_toward_limit():
    errs = [asy.binomial_sum(2, 1, t) - 1.5 for t in (50, 200, 800, 3200)]
    assert all(e > 0 for e in errs)
    assert all(a > b for a, b in zip(errs, errs[1:]))
