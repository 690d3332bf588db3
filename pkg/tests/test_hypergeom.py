from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oracles import fraction_hyper, mp_hyper
from stabspec import config, hypergeom as hg
from stabspec.errors import DomainError, PoleError


# ---------------------------------------------------------------------------
# Pochhammer
# ---------------------------------------------------------------------------


def test_pochhammer_small_values():
    assert hg.pochhammer(5, 0) == 1
    assert hg.pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert hg.pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert hg.pochhammer(-2, 5) == 0


def test_log_pochhammer_matches_lgamma():
    for q, n in [(0.5, 10), (3.25, 200), (100.0, 1000)]:
        expect = math.lgamma(q + n) - math.lgamma(q)
        assert hg.log_pochhammer(q, n) == pytest.approx(expect, rel=1e-13)


# ---------------------------------------------------------------------------
# Series summation
# ---------------------------------------------------------------------------


def test_2f1_closed_form_value():
    # 2F1(1, b; 2; x) = ((1-x)^(1-b) - 1) / ((b-1) x)
    val = hg.gauss_2f1(1, 1.5, 2, 4 / 9).value
    assert val == pytest.approx(4.5 * (3 / math.sqrt(5) - 1), rel=1e-14)


def test_terminating_series_is_exact():
    # Chu-Vandermonde: 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    sv = hg.gauss_2f1(-3, 2, 5, 1)
    assert sv.value == Fraction(2, 7)
    assert sv.tail_bound == 0
    assert hg.hyper_3f2(1, -4, Fraction(1, 3), Fraction(5, 2), 7, Fraction(3, 4)).value == fraction_hyper(
        [1, -4, Fraction(1, 3)], [Fraction(5, 2), 7], Fraction(3, 4))


def test_zero_argument_gives_one():
    assert hg.gauss_2f1(2.5, 3.5, 1.5, 0).value == 1


@pytest.mark.parametrize("args", [
    ((0.5, 1.25), (3.0,), 0.3),
    ((2.0, 7.5), (0.75,), 0.8),
    ((1, 40), (21,), 0.45),
    ((1, 2.5, 3.25), (1.5, 4.0), 0.64),
])
def test_series_against_direct_oracle(args):
    numer, denom, x = args
    sv = hg.hyper_series(numer, denom, x)
    ref = float(mp_hyper(numer, denom, x))
    assert abs(sv.value - ref) <= sv.tail_bound + 4e-15 * abs(ref)
    assert sv.value == pytest.approx(ref, rel=1e-13)


def test_extended_precision_path():
    sv = hg.hyper_series((1, 2.5, 3.25), (1.5, 4.0), 0.64, 1e-35, dps=45)
    with mpmath.workdps(60):
        ref = mp_hyper((1, 2.5, 3.25), (1.5, 4.0), 0.64, dps=60)
        assert abs(mpmath.mpf(sv.value) - ref) < 1e-33 * abs(ref)


def test_precision_mode_switches_number_type():
    with config.use_precision("extended"):
        v = hg.gauss_2f1(0.5, 1.5, 2.5, 0.3).value
    assert not isinstance(v, float)
    with mpmath.workdps(50):
        assert abs(mpmath.mpf(v) - mp_hyper((0.5, 1.5), (2.5,), 0.3, dps=50)) < 1e-32
    assert isinstance(hg.gauss_2f1(0.5, 1.5, 2.5, 0.3).value, float)


def test_pole_error_before_termination():
    with pytest.raises(PoleError):
        hg.gauss_2f1(1, 2, -3, 0.5)


def test_terminating_numerator_beats_pole():
    # the numerator vanishes first, so the series is a finite polynomial
    assert hg.gauss_2f1(-2, 1, -4, Fraction(1, 2)).value == fraction_hyper([-2, 1], [-4], Fraction(1, 2))


def test_nonterminating_outside_disk_rejected():
    with pytest.raises(DomainError):
        hg.gauss_2f1(0.5, 0.5, 1.5, 1.2)


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(0.1, 5), b=st.floats(0.1, 5), c=st.floats(0.1, 5),
    x=st.floats(0.0, 0.8),
)
def test_2f1_tail_bound_holds(a, b, c, x):
    sv = hg.gauss_2f1(a, b, c, x)
    ref = float(mp_hyper((a, b), (c,), x, dps=30))
    assert abs(sv.value - ref) <= sv.tail_bound + 1e-14 * abs(ref)


def test_log_hyper_positive_large_parameters():
    lv = hg.log_hyper_positive((1, 3000), (1001,), 0.3)
    ref = mp_hyper((1, 3000), (1001,), 0.3, dps=30)
    assert lv.log_value == pytest.approx(float(mpmath.log(ref)), rel=1e-14)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    p=st.lists(st.floats(0.1, 5), min_size=5, max_size=5),
    x=st.floats(0.0, 0.8),
)
def test_contiguous_relations(p, x):
    a, b, c, d, e = p
    assert abs(hg.residual_cont1(a, b, c, d, e, x)) <= 1e-10
    assert abs(hg.residual_cont2(a, b, c, d, e, x)) <= 1e-10
    assert abs(hg.residual_cont3(a, b, c, x)) <= 1e-10


@pytest.mark.parametrize("x", [0.2, 0.45, 0.7, 0.8])
def test_pfaff_transformation(x):
    # x = 0.7 and 0.8 send x/(x-1) below -0.9
    a, b, c = 0.75, 2.2, 3.1
    lhs = float(mp_hyper((a, b), (c,), x, dps=40))
    assert float(hg.pfaff_rhs(a, b, c, x).value) == pytest.approx(lhs, rel=1e-12)


def test_quadratic_transformation():
    for a, b, x in [(0.6, 1.3, 0.25), (2.5, 0.4, 0.75), (1.0, 1.0, 0.5)]:
        lhs = float(mp_hyper((a, b), (a + b - 0.5,), x, dps=40))
        assert float(hg.quadratic_rhs(a, b, x).value) == pytest.approx(lhs, rel=1e-12)


# ---------------------------------------------------------------------------
# The coefficient 3F2 and its reductions
# ---------------------------------------------------------------------------


def _ref_3f2(k1, k2, x):
    K = k1 + k2
    return mp_hyper((1, Fraction(K, 2) + 1, Fraction(K + 1, 2)), (k1 + 1, k2 + 1), x, dps=60)


def test_coefficient_3f2_symmetric():
    assert hg.coefficient_3f2(5, 2, 0.5).value == pytest.approx(hg.coefficient_3f2(2, 5, 0.5).value, rel=1e-15)


@pytest.mark.parametrize("k1,k2,x", [(1, 1, 4 / 9), (3, 1, 0.1), (7, 4, 0.64), (12, 12, 0.9), (12, 3, 0.1)])
def test_reduction_routes(k1, k2, x):
    ref = float(_ref_3f2(k1, k2, x))
    assert hg.coefficient_3f2(k1, k2, x).value == pytest.approx(ref, rel=1e-13)
    assert hg.reduce_part1(k1, k2, x) == pytest.approx(ref, rel=1e-13)
    assert hg.reduce_part2(k1, k2, x) == pytest.approx(ref, rel=1e-13)
    assert math.exp(hg.log_reduce_part2(k1, k2, x)) == pytest.approx(ref, rel=1e-13)
    assert hg.reduce_via_euler2(k1, k2, x) == pytest.approx(ref, rel=1e-12)
    assert hg.reduce_via_corst(k1, k2, x) == pytest.approx(ref, rel=1e-12)


def test_terminating_polynomial_exact_for_rational_x():
    k1, k2, x = 4, 3, Fraction(4, 9)
    T = hg.terminating_3f2(k1, k2, x).value
    K = k1 + k2
    assert T == fraction_hyper([1, 1 - k2, 1 - k1], [1 - Fraction(K, 2), Fraction(3 - K, 2)], 1 / x)
    assert abs(hg.corst_residual(k1, k2, x)) < 1e-20


def test_ordered_identities_need_k1_ge_k2():
    with pytest.raises(DomainError):
        hg.reduce_via_euler2(1, 3, 0.5)
    with pytest.raises(DomainError):
        hg.reduce_part2(0, 3, 0.5)
