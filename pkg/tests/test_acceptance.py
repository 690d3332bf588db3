"""Acceptance criteria, each at its stated tolerance.

One PASS/FAIL line per criterion is printed in the terminal summary.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np

from oracles import mp_binomial_coeff
from stabspec import asymptotics as asy
from stabspec import coeffs, hypergeom as hg, largeparam as lp, orthopoly, verify
from stabspec.coeffs import density_grid

RADII = (2.1, 2.5, 3.0, 5.0, 10.0)
KMAX = 12
SQRT_3_PI = math.sqrt(3 / math.pi)


def test_criterion_01_oracle_triangle(acceptance):
    start = time.perf_counter()
    worst, where = 0.0, None
    for r in RADII:
        for k1 in range(-KMAX, KMAX + 1):
            for k2 in range(-KMAX, KMAX + 1):
                d = verify.triangle_disagreement(verify.oracle_triangle(k1, k2, r, quad_n=512))
                if d > worst:
                    worst, where = d, (k1, k2, r)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 60
    acceptance("1", ok, f"max pairwise rel diff {worst:.2e} at {where}, {elapsed:.1f}s (need <= 1e-8, < 60s)")
    assert ok


def test_criterion_02_identity_suite(acceptance):
    start = time.perf_counter()
    checks = verify.identities(1000, seed=2024)
    elapsed = time.perf_counter() - start
    worst = {}
    for c in checks:
        worst[c.name] = max(worst.get(c.name, 0.0), c.residual)
    ok = all(c.passed for c in checks) and len(checks) == 5000 and elapsed < 30
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    acceptance("2", ok, f"max residuals {detail}; {elapsed:.1f}s (need <= 1e-10, < 30s)")
    assert ok


X_VALUES = (Fraction(1, 10), Fraction(4, 9), Fraction(16, 25), Fraction(9, 10))


def test_criterion_03_reductions(acceptance):
    worst = {"part1": 0.0, "part2": 0.0, "euler2": 0.0, "corst": 0.0}
    for k1 in range(1, KMAX + 1):
        for k2 in range(1, k1 + 1):
            for xq in X_VALUES:
                x = float(xq)
                direct = float(hg.coefficient_3f2(k1, k2, x, 1e-17).value)
                routes = {
                    "part1": hg.reduce_part1(k1, k2, x),
                    "part2": hg.reduce_part2(k1, k2, x),
                    "euler2": hg.reduce_via_euler2(k1, k2, x),
                    "corst": hg.reduce_via_corst(k1, k2, x),
                }
                for name, v in routes.items():
                    worst[name] = max(worst[name], abs(v - direct) / abs(direct))
    exact_worst = 0.0
    for k1 in range(1, KMAX + 1):
        for k2 in range(1, min(k1, 4) + 1):
            for xq in X_VALUES:
                T = hg.terminating_3f2(k1, k2, xq).value
                assert isinstance(T, Fraction)
                exact_worst = max(exact_worst, abs(hg.corst_residual(k1, k2, xq)))
    ok = max(worst.values()) <= 1e-9 and exact_worst <= 1e-10
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    acceptance("3", ok, f"{detail}; exact terminating side vs 2F1 difference {exact_worst:.1e}")
    assert ok


def test_criterion_04a_subcritical_value(acceptance):
    start = time.perf_counter()
    t = 256
    value = asy.scaled_coeff(2, 1, 3, t)
    elapsed = time.perf_counter() - start
    dev = value / SQRT_3_PI - 1
    ok = abs(dev) <= 1.5e-3 and elapsed < 10
    acceptance("4a", ok, f"sqrt(t) 4^t c_(2t,t) = {value:.10f} at t=256, deviation {dev:.3%} (need <= 0.15%); "
                         f"{elapsed:.2f}s")
    assert ok


def test_criterion_04b_first_order_deviation(acceptance):
    t = 256
    dev = asy.scaled_coeff(2, 1, 3, t) / SQRT_3_PI - 1
    predicted = -55 / 72
    ratio = dev * t / predicted
    ok = 1 / 1.2 <= ratio <= 1.2
    acceptance("4b", ok, f"deviation * t = {dev * t:.4f} vs -55/72 = {predicted:.4f}, ratio {ratio:.3f} "
                         f"(need within factor 1.2)")
    assert ok


def test_criterion_05_reference_series(acceptance):
    scaled = []
    for t in range(8, 65):
        exact = float(mp_binomial_coeff(2 * t, t, 3))
        scaled.append(abs(exact / asy.melczer_reference(t) - 1) * t**5)
    C = max(scaled) / 10
    inside = all(abs(s) / t**5 <= 10 * C / t**5 for s, t in zip(scaled, range(8, 65)))
    p = asy.prediction_coefficients(Fraction(1, 2), 3)
    normalized = (p[0] / p[0], p[1] / (2 * p[0]), p[2] / (4 * p[0]))
    exact_ok = normalized == (1, Fraction(-55, 72), Fraction(26065, 10368))
    # an O(t^-4) residual would double t^5 |ratio - 1| per octave
    growth = scaled[64 - 8] / scaled[32 - 8]
    ok = math.isfinite(C) and inside and exact_ok and growth < 1.5
    acceptance("5", ok, f"fitted C = {C:.1f} over t in [8, 64], octave growth {growth:.2f}; "
                        f"corrected coefficients {tuple(str(v) for v in normalized)}")
    assert ok


def test_criterion_06_critical(acceptance):
    t = 512
    value = asy.scaled_coeff(4, 1, Fraction(5, 2), t)
    dev = value / (5 / 6) - 1
    ok = abs(dev) <= 1e-2
    acceptance("6", ok, f"c_(4t,t) / 0.5^(3t) = {value:.8f} at t=512 vs 5/6, deviation {dev:.2%} (need <= 1%)")
    assert ok


def test_criterion_07_supercritical(acceptance):
    t = 64
    value = asy.scaled_coeff(10, 1, 2.1, t)
    limit = 1 / math.sqrt(1 - 4 / 4.41)
    dev = value / limit - 1
    ok = abs(dev) <= 1e-3
    acceptance("7", ok, f"c_(10t,t) / a^(9t) = {value:.10f} at t=64 vs {limit:.10f}, deviation {dev:.1e} "
                        f"(need <= 0.1%)")
    assert ok


def test_criterion_08_series_error_bound(acceptance):
    violations, worst, count = 0, 0.0, 0
    for beta, a, x in verify.expansion_grid(5):
        for t in (50, 100, 200, 400):
            for n in (1, 2, 3):
                ratio = verify.expansion_error_ratio(beta, a, x, t, n)
                count += 1
                worst = max(worst, ratio)
                violations += ratio > 1
    ok = violations == 0 and count == 125 * 12
    acceptance("8", ok, f"{violations} violations in {count} cases; max error/bound {worst:.3f}")
    assert ok


def test_criterion_09_binomial_sum(acceptance):
    value = asy.binomial_sum(2, 1, 200)
    dev = value / 1.5 - 1
    ok = abs(dev) <= 2e-2
    acceptance("9", ok, f"binomial_sum(2, 1, 200) = {value:.6f} vs 3/2, deviation {dev:.2%} (need <= 2%)")
    assert ok


def test_criterion_10_orthonormality(acceptance):
    res = orthopoly.gram_check(3.0)
    norm_worst = max(
        abs(got - want) for r in (2.1, 3.0, 10.0) for got, want in orthopoly.norm_identities(r).values()
    )
    ok = res.max_deviation <= 1e-9 and norm_worst <= 1e-10
    acceptance("10", ok, f"{len(res.labels)}-element Gram max deviation {res.max_deviation:.1e}; "
                         f"norm identities {norm_worst:.1e}")
    assert ok


def test_criterion_11_structural(acceptance):
    rec = max(abs(coeffs.recurrence_residual(k1, k2, r))
              for r in RADII for k1 in range(-KMAX, KMAX + 1) for k2 in range(-KMAX, KMAX + 1))
    positive = all(coeffs.coeff(k1, k2, r) > 0
                   for r in RADII for k1 in range(-KMAX, KMAX + 1) for k2 in range(-KMAX, KMAX + 1))
    positive = positive and all(density_grid(r, 64).min() > 0 for r in RADII)
    min_eig = min(np.linalg.eigvalsh(orthopoly.moment_matrix(4, r)).min() for r in RADII)
    rng = np.random.default_rng(11)
    lemma_ok = 0
    for _ in range(200):
        beta = float(rng.uniform(0.01, 0.99))
        hi = (1 + beta) / math.sqrt(beta)
        r = 2 + float(rng.uniform(0.001, 0.999)) * (hi - 2)
        lhs, rhs = lp.lemma_ineq_sides(r, beta)
        lemma_ok += lhs < rhs
    ok = rec <= 1e-10 and positive and min_eig > 0 and lemma_ok == 200
    acceptance("11", ok, f"recurrence {rec:.1e}; positivity {positive}; block Toeplitz min eigenvalue "
                         f"{min_eig:.2e}; lemma {lemma_ok}/200")
    assert ok
