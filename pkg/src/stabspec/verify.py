"""Seeded randomized verification suites behind ``stabspec verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import coeffs, hypergeom, largeparam
from .errors import DomainError

SUITES = ("identities", "oracles", "bounds")
ORACLE_RADII = (2.1, 2.5, 3.0, 5.0, 10.0)
BOUND_TIMES = (50, 100, 200, 400)


@dataclass(frozen=True)
class Check:
    name: str
    params: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tol


def _p(*vals) -> str:
    return ";".join(format(float(v), ".17g") for v in vals)


def _rel(u: float, v: float) -> float:
    return abs(u - v) / max(abs(u), abs(v), 1e-300)


def pfaff_residual(a, b, c, x) -> float:
    lhs = hypergeom.gauss_2f1(a, b, c, x).value
    rhs = float(hypergeom.pfaff_rhs(a, b, c, x).value)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def quadratic_residual(a, b, x) -> float:
    lhs = hypergeom.gauss_2f1(a, b, a + b - 0.5, x).value
    rhs = float(hypergeom.quadratic_rhs(a, b, x).value)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def identity_draws(rng: np.random.Generator):
    """One draw for each identity: (name, callable, params)."""
    u = lambda: float(rng.uniform(0.1, 5.0))  # noqa: E731
    x = float(rng.uniform(0.0, 0.8))
    a, b, c, d, e = (u() for _ in range(5))
    yield "cont1", lambda: hypergeom.residual_cont1(a, b, c, d, e, x), (a, b, c, d, e, x)
    yield "cont2", lambda: hypergeom.residual_cont2(a, b, c, d, e, x), (a, b, c, d, e, x)
    yield "cont3", lambda: hypergeom.residual_cont3(a, b, c, x), (a, b, c, x)
    yield "pfaff", lambda: pfaff_residual(a, b, c, x), (a, b, c, x)
    yield "quadratic", lambda: quadratic_residual(a, b, x), (a, b, x)


def identities(trials: int, seed: int, tol: float = 1e-10) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        for name, fn, params in identity_draws(rng):
            out.append(Check(name, _p(*params), _safe(fn), tol))
    return out


def oracle_triangle(k1: int, k2: int, r: float, quad_n: int = 512) -> dict[str, float]:
    """Closed form, series oracle and quadrature oracle of one coefficient."""
    return {
        "closed": coeffs.coeff(k1, k2, r),
        "series": float(coeffs.coeff_series_oracle(k1, k2, r).value),
        "quadrature": coeffs.coeff_quadrature_oracle(k1, k2, r, N=quad_n),
    }


def triangle_disagreement(vals: dict[str, float]) -> float:
    v = list(vals.values())
    return max(_rel(v[i], v[j]) for i in range(len(v)) for j in range(i + 1, len(v)))


def oracles(trials: int, seed: int, tol: float = 1e-8, kmax: int = 12) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        k1, k2 = (int(k) for k in rng.integers(-kmax, kmax + 1, size=2))
        r = ORACLE_RADII[int(rng.integers(len(ORACLE_RADII)))]
        res = _safe(lambda: triangle_disagreement(oracle_triangle(k1, k2, r)))
        out.append(Check("triangle", f"{k1};{k2};{r:.17g}", res, tol))
        out.append(Check("recurrence", f"{k1};{k2};{r:.17g}",
                         _safe(lambda: coeffs.recurrence_residual(k1, k2, r)), 1e-10))
    return out


def expansion_grid(size: int = 5) -> list[tuple[float, float, float]]:
    """Admissible (beta, a, x): a is a fraction of 1+beta and y = (1+beta) x / a spans (0, 1)."""
    grid = []
    for beta in np.linspace(0.1, 1.0, size):
        for s in np.linspace(0.3, 1.0, size):
            a = (1 + beta) * s
            for y in np.linspace(0.1, 0.8, size):
                grid.append((float(beta), float(a), float(a * y / (1 + beta))))
    return grid


def direct_2f1(beta, a, x, t) -> float:
    """2F1(1, (1+beta) t; a t + 1; x) by direct summation at 30 digits."""
    return float(hypergeom.gauss_2f1(1, (1 + beta) * t, a * t + 1, x, 1e-25, dps=30).value)


def expansion_error_ratio(beta, a, x, t, n) -> float:
    """|expansion - direct| / bound; at most 1 when the bound holds."""
    approx = largeparam.asymptotic_2f1(beta, a, x, t, n)
    err = abs(approx.value - direct_2f1(beta, a, x, t))
    return err / approx.remainder_bound if approx.remainder_bound > 0 else (0.0 if err == 0 else math.inf)


def bounds(trials: int, seed: int, tol: float = 1.0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        beta = float(rng.uniform(0.05, 1.0))
        a = float((1 + beta) * rng.uniform(0.2, 1.0))
        x = float(a * rng.uniform(0.0, 0.9) / (1 + beta))
        t = BOUND_TIMES[int(rng.integers(len(BOUND_TIMES)))]
        n = int(rng.integers(1, 4))
        out.append(Check("asyser", _p(beta, a, x, t, n),
                         _safe(lambda: expansion_error_ratio(beta, a, x, t, n)), tol))
        y = float(rng.uniform(0.0, 0.95))
        m = int(rng.integers(1, 4))
        lhs, rhs = largeparam.power_sum_bound_check(y, m)
        out.append(Check("power_sum", _p(y, m), lhs / rhs if rhs else 0.0, 1 + 1e-12))
    return out


def _safe(fn: Callable[[], float]) -> float:
    try:
        return float(fn())
    except (ArithmeticError, ValueError):
        return math.inf


def run_suite(suite: str, trials: int, seed: int) -> list[Check]:
    if trials < 0:
        raise DomainError("trials must be nonnegative")
    if suite == "identities":
        return identities(trials, seed)
    if suite == "oracles":
        return oracles(trials, seed)
    if suite == "bounds":
        return bounds(trials, seed)
    raise DomainError(f"unknown suite {suite!r}")
