"""Large-parameter behaviour of 2F1(1, (1+beta) t; a t + 1; x).

Generalized Bernoulli numbers, the alpha / gamma / d coefficient families of
the 1/t expansion, the expansion itself with an explicit remainder bound,
its t -> infinity limits, and the b0, b1, b2 correction coefficients of the
combination that appears in the same-sign Fourier coefficients.

Most routines accept ``Fraction`` inputs and then return exact rationals.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError, PoleError
from .hypergeom import hyper_series, mp_context, to_ctx

log = logging.getLogger(__name__)

BERNOULLI_KMAX = 16
MAX_ORDER = 3
K_TOL = 1e-17

# a_mode values of limit_2f1
DENOM_T = "t+1"
DENOM_BETA_T = "beta*t+1"


# ---------------------------------------------------------------------------
# Generalized Bernoulli numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _expm1_over_t(length: int) -> tuple[Fraction, ...]:
    # (e^t - 1)/t = sum t^n / (n+1)!
    return tuple(Fraction(1, math.factorial(n + 1)) for n in range(length))


@lru_cache(maxsize=None)
def _series_power(j: int, length: int) -> tuple[Fraction, ...]:
    """Coefficients of ((e^t - 1)/t)^(-j), i.e. (t/(e^t - 1))^j, up to t^(length-1).

    Uses the recurrence for powers of a series with unit constant term:
    n c_n = sum_{k=1..n} (k (e + 1) - n) a_k c_{n-k}, e = -j.
    """
    a = _expm1_over_t(length)
    e = -j
    c = [Fraction(1)]
    for n in range(1, length):
        acc = sum(((k * (e + 1) - n) * a[k] * c[n - k] for k in range(1, n + 1)), Fraction(0))
        c.append(acc / n)
    return tuple(c)


def gen_bernoulli(j: int, k: int, kmax: int = BERNOULLI_KMAX) -> Fraction:
    """B^{(j)}_k(0): k! times the t^k coefficient of (t/(e^t - 1))^j.

    Negative ``j`` gives the coefficients of ((e^t - 1)/t)^|j|.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k > kmax:
        raise DomainError(f"k={k} exceeds kmax={kmax}")
    return _series_power(int(j), k + 1)[k] * math.factorial(k)


@dataclass(frozen=True)
class BernoulliTable:
    """B^{(j)}_k(0) for k = 0..kmax, exact."""

    order: int
    entries: tuple[Fraction, ...]

    @classmethod
    def build(cls, order: int, kmax: int = BERNOULLI_KMAX) -> "BernoulliTable":
        return cls(order, tuple(gen_bernoulli(order, k, kmax) for k in range(kmax + 1)))

    @property
    def kmax(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.entries[k]


# ---------------------------------------------------------------------------
# alpha, gamma, d
# ---------------------------------------------------------------------------


def _rising_over_factorial(q: int, k: int) -> Fraction:
    return Fraction(math.prod(range(q, q + k)), math.factorial(k))


def alpha(j: int, k: int, beta):
    """alpha_{j,k}: coefficient of t^-k in ((1+beta) t)_j / ((1+beta) t)^j."""
    return _rising_over_factorial(1 - j, k) * gen_bernoulli(j, k) / (1 + beta) ** k


def gamma(j: int, k: int, a):
    """gamma_{j,k}: coefficient of t^-k in (a t)^j / (a t + 1)_j."""
    sign = -1 if k % 2 else 1
    return sign * _rising_over_factorial(j + 1, k) * gen_bernoulli(-j, k) / a**k


def d_coefficient(k: int, i: int, beta, a):
    """d_{k,i} = sum_{j<=i} gamma_{k,j} alpha_{k,i-j}."""
    return sum(gamma(k, j, a) * alpha(k, i - j, beta) for j in range(i + 1))


def d_row(k: int, beta, a, n: int) -> list:
    """[d_{k,0}, ..., d_{k,n-1}] as the 1/t Taylor coefficients of

        prod_{m<k} (1 + m/((1+beta) t)) / (1 + (m+1)/(a t)).

    Independent of the Bernoulli route; used for the long k sums.
    """
    row = [1.0 if not isinstance(beta, Fraction) else Fraction(1)] + [0] * (n - 1)
    for m in range(k):
        row = _times_factor(row, m / (1 + beta), (m + 1) / a)
    return row


def _times_factor(row: list, p, q) -> list:
    # multiply a truncated series in u by (1 + p u)/(1 + q u)
    n = len(row)
    out = list(row)
    for i in range(n - 1, 0, -1):
        out[i] = out[i] + p * out[i - 1]
    # divide by (1 + q u): forward substitution
    for i in range(1, n):
        out[i] = out[i] - q * out[i - 1]
    return out


@dataclass(frozen=True)
class ExpansionCoeffs:
    """alpha / gamma / d tables for a given (beta, a, x), indices below kmax and n."""

    beta: object
    a: object
    x: object
    n: int
    alpha: tuple
    gamma: tuple
    d: tuple


def expansion_coefficients(beta, a, x, n: int = MAX_ORDER, kmax: int = 8) -> ExpansionCoeffs:
    """alpha[j][k], gamma[j][k] for j <= kmax, k < n, and d[k][i] by the combination rule."""
    al = tuple(tuple(alpha(j, k, beta) for k in range(n)) for j in range(kmax + 1))
    ga = tuple(tuple(gamma(j, k, a) for k in range(n)) for j in range(kmax + 1))
    d = tuple(
        tuple(sum(ga[k][j] * al[k][i - j] for j in range(i + 1)) for i in range(n))
        for k in range(kmax + 1)
    )
    return ExpansionCoeffs(beta, a, x, n, al, ga, d)


# ---------------------------------------------------------------------------
# The expansion and its remainder
# ---------------------------------------------------------------------------


class AsymptoticValue(NamedTuple):
    value: float
    remainder_bound: float


def _check_expansion(beta, a, x) -> float:
    if not 0 <= beta <= 1:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    if not 0 < a <= 1 + beta:
        raise DomainError(f"a must lie in (0, 1+beta], got {a}")
    y = (1 + beta) * x / a
    if not 0 <= x <= y < 1:
        raise DomainError("need 0 <= x <= (1+beta) x / a < 1")
    return float(y)


def expansion_sums(beta, a, x, n: int, tol: float = K_TOL) -> list[float]:
    """S_i = sum_k d_{k,i} y^k for i < n, y = (1+beta) x / a.

    The k sum stops once the majorant sum_{k>=K} k^(2i) y^k / a^i of the
    remaining terms (|d_{k,i}| <= k^(2i)/a^i) drops below tol.
    """
    y = _check_expansion(beta, a, x)
    beta, a = float(beta), float(a)
    sums = [0.0] * n
    if y == 0:
        sums[0] = 1.0
        return sums
    row = [1.0] + [0.0] * (n - 1)
    acc = [[] for _ in range(n)]
    yk = 1.0
    k = 0
    while True:
        for i in range(n):
            acc[i].append(row[i] * yk)
        # row for k+1
        row = _times_factor(row, k / (1 + beta), (k + 1) / a)
        k += 1
        yk *= y
        top = 2 * (n - 1)
        q = y * ((k + 1) / k) ** top
        if q < 1:
            tail = k**top * yk / a ** (n - 1) / (1 - q)
            if tail <= tol:
                break
        if k > 10_000_000:
            raise DomainError("k sum failed to converge")
    return [math.fsum(v) for v in acc]


def remainder_bound(beta, a, x, t: float, n: int) -> float:
    """(2n)!/2 (1+beta) x (a + (1+beta) x) / (a^(n+2) (1-y)^(2n+1)) / t^n."""
    y = _check_expansion(beta, a, x)
    bx = (1 + float(beta)) * float(x)
    a = float(a)
    return math.factorial(2 * n) / 2 * bx * (a + bx) / (a ** (n + 2) * (1 - y) ** (2 * n + 1)) / t**n


def asymptotic_2f1(beta, a, x, t: float, n: int = MAX_ORDER, max_order: int = MAX_ORDER) -> AsymptoticValue:
    """Truncated 1/t expansion of 2F1(1, (1+beta) t; a t + 1; x) through t^-(n-1).

    Returns the value and the explicit bound on |2F1 - value|.  Orders above 3
    are computed by the same machinery but have no closed-form cross-check.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > max_order:
        raise DomainError(f"n={n} exceeds max_order={max_order}")
    if n > MAX_ORDER:
        log.warning("order %d expansion is unvalidated beyond t^-2", n)
    if t <= 0:
        raise DomainError("t must be positive")
    sums = expansion_sums(beta, a, x, n)
    value = math.fsum(s / t**i for i, s in enumerate(sums))
    bound = remainder_bound(beta, a, x, t, n)
    # plus the k-sum truncation
    bound += K_TOL * sum(t**-i for i in range(n))
    return AsymptoticValue(value, bound)


def tm2_coefficients(beta, a, x) -> tuple:
    """Closed forms of S_0, S_1, S_2 (the t^0, t^-1, t^-2 coefficients)."""
    y = 1 - (1 + beta) * x / a
    b1 = 1 + beta
    e = b1 - a
    c0 = 1 / y
    c1 = -b1 * x / (a**2 * y**2) * (1 + e * x / (a * y))
    c2 = b1 * x / (a**3 * y**2) * (
        1
        + (5 * e + 2 * a) * x / (a * y)
        + e * (7 * b1 - 2 * a) * x**2 / (a**2 * y**2)
        + e**2 * b1 * 3 * x**3 / (a**3 * y**3)
    )
    return c0, c1, c2


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------


def limit_2f1(beta, a_mode: str, x) -> float:
    """t -> infinity limit of 2F1(1, (1+beta) t; t+1; x) or 2F1(1, (1+beta) t; beta t + 1; x)."""
    if a_mode == DENOM_T:
        if not 0 <= beta <= 1 or (1 + beta) * abs(x) >= 1:
            raise DomainError("need 0 <= beta <= 1 and (1+beta)|x| < 1")
        return 1 / (1 - (1 + beta) * x)
    if a_mode == DENOM_BETA_T:
        if not 0 < beta <= 1 or (1 + beta) * abs(x) / beta >= 1:
            raise DomainError("need 0 < beta <= 1 and (1+beta)|x|/beta < 1")
        return 1 / (1 - (1 + beta) / beta * x)
    raise DomainError(f"unknown a_mode {a_mode!r}")


def critical_ratio(beta, x):
    """(1+beta)^2 x / (4 beta)."""
    return (1 + beta) ** 2 * x / (4 * beta)


def limit_3f2(beta, x) -> float:
    """Limit of 3F2(1, (1+beta) t/2 + 1, (1+beta) t/2 + 1/2; t+1, beta t + 1; x)."""
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    rho = critical_ratio(beta, x)
    if not 0 <= rho < 1:
        raise DomainError("need 0 <= (1+beta)^2 x/(4 beta) < 1")
    return 1 / (1 - rho)


def diff_limit(beta, x) -> float:
    """Limit of the scaled 2F1 difference when (1+beta)^2 x/(4 beta) > 1."""
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    if not x < 1:
        raise DomainError("x must be below 1")
    rho = critical_ratio(beta, x)
    if rho <= 1:
        raise DomainError("need (1+beta)^2 x/(4 beta) > 1")
    return -1 / (rho - 1)


def _beta_t(beta, t):
    return (1 + Fraction(beta)) * t if isinstance(beta, (int, Fraction)) else (1 + beta) * t


def scaled_difference(beta, x, t: int, dps: int = 30) -> float:
    """beta/((1+beta) sqrt(1-x)) [F(z-) - F(z+)], F = 2F1(1, (1+beta) t; t+1; .),
    z-/+ = (1 -/+ sqrt(1-x))/2; summed directly in extended precision."""
    ctx = mp_context(dps)
    X = to_ctx(ctx, x)
    s = ctx.sqrt(1 - X)
    b = _beta_t(beta, t)
    lo = hyper_series((1, b), (t + 1,), (1 - s) / 2, 1e-25, dps=dps).value
    hi = hyper_series((1, b), (t + 1,), (1 + s) / 2, 1e-25, dps=dps).value
    B = to_ctx(ctx, beta)
    return float(B / ((1 + B) * s) * (lo - hi))


def critical_2f1_growth(beta, t) -> float:
    """sqrt(pi t (1+beta) / (2 beta)), leading growth of 2F1(1, (1+beta) t; t+1; 1/(1+beta))."""
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    return math.sqrt(math.pi * t * (1 + beta) / (2 * beta))


# ---------------------------------------------------------------------------
# Correction coefficients of the two-term combination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorrectionCoeffs:
    """b0 + b1/t + b2/t^2 expansion of the combination

        beta/((1+beta) s) F(1, (1+beta) t; t+1; z) + 1/((1+beta) s) F(1, (1+beta) t; beta t+1; z),

    s = sqrt(1-x), z = (1-s)/2.  b0, b1, b2 are exact when beta and x are Fractions.
    """

    b0: object
    b1: object
    b2: object
    y1: float
    y2: float
    x: object
    beta: object

    def as_floats(self) -> tuple[float, float, float]:
        return float(self.b0), float(self.b1), float(self.b2)


def correction_coeffs(beta, x) -> CorrectionCoeffs:
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    if not 0 <= x < 1:
        raise DomainError("x must lie in [0, 1)")
    den = 1 - critical_ratio(beta, x)
    if den == 0:
        raise PoleError("critical ratio (1+beta)^2 x/(4 beta) = 1")
    bt = 1 + beta
    b0 = 1 / den
    b1 = x / (16 * beta**2) * (bt**3 * x - 4 * (1 + beta**3)) / den**3
    b2 = x / ((4 * beta) ** 4 * den**5) * (
        64 * beta * (1 + beta**4)
        + 16 * bt**2 * (1 + (beta - 3) * beta) * (2 + beta * (2 * beta - 1)) * x
        - 20 * (1 - beta) ** 2 * bt**4 * x**2
        + bt**6 * x**3
    )
    s = math.sqrt(1 - float(x))
    z = (1 - s) / 2
    y1 = 1 - float(bt) * z
    y2 = 1 - float(bt) / float(beta) * z
    return CorrectionCoeffs(b0, b1, b2, y1, y2, x, beta)


def combined_coefficients(beta, x, n: int = MAX_ORDER) -> list[float]:
    """b_i for i < n assembled from the expansion sums at a = 1 and a = beta."""
    s = math.sqrt(1 - float(x))
    z = (1 - s) / 2
    beta = float(beta)
    one = expansion_sums(beta, 1.0, z, n)
    other = expansion_sums(beta, beta, z, n)
    w = (1 + beta) * s
    return [(beta * u + v) / w for u, v in zip(one, other)]


def errterm_bound(beta, x, t) -> float:
    """Bound on the O(t^-3) remainder of b0 + b1/t + b2/t^2, transcribed as stated."""
    beta, x = float(beta), float(x)
    s = math.sqrt(1 - x)
    c = correction_coeffs(beta, x)
    u = (1 - s) / 2
    num = (1 + (1 + beta) * u) * beta**6 * c.y2**7 + (beta + (1 + beta) * u) * c.y1**7
    rho = 1 - critical_ratio(beta, x)
    return math.factorial(6) * (1 - s) / (4 * s) * num / (beta**5 * rho**7) / t**3


def per_series_bound(beta, x, t, n: int = 3) -> float:
    """Weighted sum of the single-series remainder bounds at a = 1 and a = beta."""
    beta, x = float(beta), float(x)
    s = math.sqrt(1 - x)
    z = (1 - s) / 2
    w = (1 + beta) * s
    return (beta * remainder_bound(beta, 1.0, z, t, n) + remainder_bound(beta, beta, z, t, n)) / w


def asympt_error_bound(beta, x, t) -> float:
    """The smaller of :func:`errterm_bound` and :func:`per_series_bound`."""
    return min(errterm_bound(beta, x, t), per_series_bound(beta, x, t))


# ---------------------------------------------------------------------------
# Small checks
# ---------------------------------------------------------------------------


def power_sum_bound_check(y: float, n: int) -> tuple[float, float]:
    """(sum_{k>=1} k^(2n) y^k, (2n)!/2 y (1+y)/(1-y)^(2n+1)); the first never exceeds the second."""
    if not 0 <= y < 1:
        raise DomainError("y must lie in [0, 1)")
    if n < 1:
        raise DomainError("n must be positive")
    rhs = math.factorial(2 * n) / 2 * y * (1 + y) / (1 - y) ** (2 * n + 1)
    if y == 0:
        return 0.0, 0.0
    terms = []
    k = 1
    log_y = math.log(y)
    while True:
        term = math.exp(2 * n * math.log(k) + k * log_y)
        terms.append(term)
        q = y * ((k + 1) / k) ** (2 * n)
        if q < 1 and term * q / (1 - q) <= 1e-17 * math.fsum(terms):
            break
        k += 1
    return math.fsum(terms), rhs


def lemma_ineq_sides(r: float, beta: float) -> tuple[float, float]:
    """(r^-(1+beta) (1+beta)^(1+beta) / beta^beta, (r/2 - sqrt(r^2/4 - 1))^(1-beta)).

    For 2 < r < (1+beta)/sqrt(beta) and 0 < beta < 1 the first is smaller.
    """
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    if not 2 < r < (1 + beta) / math.sqrt(beta):
        raise DomainError("need 2 < r < (1+beta)/sqrt(beta)")
    lhs = math.exp((1 + beta) * (math.log1p(beta) - math.log(r)) - beta * math.log(beta))
    a = 2 / (r + math.sqrt(r * r - 4))
    return lhs, a ** (1 - beta)
