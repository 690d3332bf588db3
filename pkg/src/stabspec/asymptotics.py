"""Radial asymptotics of c_{t k1, t k2} for k1 >= k2 >= 1.

The ratio rho = (k1 + k2)^2 / (r^2 k1 k2) selects one of three laws:

* rho < 1: sqrt(t) c / base^t -> constant, base = K^K / (r^K k1^k1 k2^k2)
* rho = 1: c / a^(t (k1 - k2)) -> 1 / (2 sqrt(1 - 4/r^2))
* rho > 1: c / a^(t (k1 - k2)) -> 1 / sqrt(1 - 4/r^2)

with a the intersecting-zero component.  Everything indexed by t runs in
log space.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import check_r, intersecting_zero, log_coeff
from .errors import DomainError
from .hypergeom import log_hyper_positive
from .largeparam import correction_coeffs

CRITICAL_TOL = 1e-12


class Regime(enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class RegimeReport:
    k1: int
    k2: int
    r: float
    rho: float
    regime: Regime
    decay_base: float
    limit_constant: float
    log_decay_base: float


def _canonical(k1: int, k2: int) -> tuple[int, int]:
    if k1 < k2:
        k1, k2 = k2, k1
    if k2 < 1:
        raise DomainError("radial asymptotics need k1, k2 >= 1")
    return k1, k2


def regime_ratio(k1: int, k2: int, r=None, *, r2=None):
    """(k1+k2)^2 / (r^2 k1 k2); exact when k1, k2 and r (or r2 = r^2) are rational."""
    if r2 is None:
        r2 = r * r
    K = k1 + k2
    if isinstance(r2, (int, Fraction)):
        return Fraction(K * K) / (r2 * k1 * k2)
    return K * K / (r2 * k1 * k2)


def classify(k1: int, k2: int, r=None, *, r2=None) -> RegimeReport:
    """Regime, decay base and limit constant of c_{t k1, t k2}.

    Pass rational ``r`` or ``r2`` (= r^2) for exact classification; otherwise
    |rho - 1| <= 1e-12 counts as critical.
    """
    k1, k2 = _canonical(int(k1), int(k2))
    if r2 is None:
        if r is None:
            raise DomainError("give r or r2")
        r2 = r * r
    if not r2 > 4:
        raise DomainError("r must exceed 2")
    rf = math.sqrt(float(r2)) if r is None else float(r)
    check_r(rf)
    rho = regime_ratio(k1, k2, r2=r2)
    if isinstance(rho, Fraction):
        regime = Regime.CRITICAL if rho == 1 else Regime.SUBCRITICAL if rho < 1 else Regime.SUPERCRITICAL
    elif abs(rho - 1) <= CRITICAL_TOL:
        regime = Regime.CRITICAL
    else:
        regime = Regime.SUBCRITICAL if rho < 1 else Regime.SUPERCRITICAL
    K = k1 + k2
    root = math.sqrt(1 - 4 / float(r2))
    if regime is Regime.SUBCRITICAL:
        log_base = K * math.log(K) - K * math.log(rf) - k1 * math.log(k1) - k2 * math.log(k2)
        limit = math.sqrt(K / (k1 * k2)) / math.sqrt(2 * math.pi) / (1 - float(rho))
    else:
        log_base = (k1 - k2) * math.log(intersecting_zero(rf).a)
        limit = 1 / root if regime is Regime.SUPERCRITICAL else 1 / (2 * root)
    return RegimeReport(k1, k2, rf, float(rho), regime, math.exp(log_base), limit, log_base)


@dataclass(frozen=True)
class SmoothPoints:
    on_p: tuple[float, float]
    on_reverse: tuple[float, float]
    r: float

    def residuals(self) -> tuple[float, float]:
        """p at on_p and the reverse polynomial at on_reverse (both vanish)."""
        z1, z2 = self.on_p
        w1, w2 = self.on_reverse
        r = self.r
        return 1 - (z1 + z2) / r, w1 * w2 - w1 / r - w2 / r

    def gradient_residuals(self, k1: int, k2: int) -> tuple[float, float]:
        """k1 z2 dP/dz2 - k2 z1 dP/dz1 for P = p at on_p and P = reverse at on_reverse."""
        z1, z2 = self.on_p
        w1, w2 = self.on_reverse
        r = self.r
        gp = k1 * z2 * (-1 / r) - k2 * z1 * (-1 / r)
        gq = k1 * w2 * (w1 - 1 / r) - k2 * w1 * (w2 - 1 / r)
        return gp, gq


def smooth_points(k1: int, k2: int, r: float) -> SmoothPoints:
    """The nonzero critical points of p and of its reverse in direction (k1, k2)."""
    if k1 < 1 or k2 < 1:
        raise DomainError("k1 and k2 must be positive")
    K = k1 + k2
    return SmoothPoints((r * k1 / K, r * k2 / K), (K / (r * k1), K / (r * k2)), r)


def intersecting_zero_determinant(r: float) -> float:
    """det [[z1 p_1, z2 p_2], [z1 q_1, z2 q_2]] = z1 z2 (z2 - z1)/r at (a, 1/a); equals sqrt(1 - 4/r^2)."""
    iz = intersecting_zero(r)
    z1, z2 = iz.a, iz.a_inv
    m11, m12 = -z1 / r, -z2 / r
    m21, m22 = z1 * (z2 - 1 / r), z2 * (z1 - 1 / r)
    return m11 * m22 - m12 * m21


# ---------------------------------------------------------------------------
# Scaled coefficients and predictions
# ---------------------------------------------------------------------------


def log_scaled_coeff(k1: int, k2: int, r, t: int) -> float:
    rep = classify(k1, k2, r)
    value = log_coeff(t * k1, t * k2, float(r)) - t * rep.log_decay_base
    if rep.regime is Regime.SUBCRITICAL:
        value += 0.5 * math.log(t)
    return value


def scaled_coeff(k1: int, k2: int, r, t: int) -> float:
    """c_{t k1, t k2} / base^t, times sqrt(t) in the subcritical regime; tends to the limit constant."""
    if t < 1:
        raise DomainError("t must be a positive integer")
    return math.exp(log_scaled_coeff(k1, k2, r, t))


def stirling_terms(beta):
    """(s1, s2) with ((1+beta) t)! / (t! (beta t)!) ~ ... (1 - s1/t + s2/t^2)."""
    u = 1 + beta + beta * beta
    w = beta * (1 + beta)
    return u / (12 * w), u * u / (288 * w * w)


def stirling_binomial(beta, t, order: int = 2) -> float:
    """Stirling approximation of C((1+beta) t, t) through t^-order."""
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    b = float(beta)
    log_lead = (-0.5 * math.log(2 * math.pi * t) + ((1 + b) * t + 0.5) * math.log1p(b)
                - (b * t + 0.5) * math.log(b))
    s1, s2 = (float(v) for v in stirling_terms(beta))
    corr = [1.0, -s1 / t, s2 / t**2]
    return math.exp(log_lead) * math.fsum(corr[: order + 1])


def prediction_coefficients(beta, r) -> tuple:
    """(p0, p1, p2) of b0 + (b1 - s1 b0)/t + (b2 - s1 b1 + s2 b0)/t^2 at x = 4/r^2.

    Exact for rational beta and r.
    """
    x = 4 / (Fraction(r) ** 2) if isinstance(r, (int, Fraction)) else 4 / r**2
    c = correction_coeffs(beta, x)
    s1, s2 = stirling_terms(beta)
    return c.b0, c.b1 - s1 * c.b0, c.b2 - s1 * c.b1 + s2 * c.b0


def _check_subcritical(beta, r) -> None:
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    if (1 + beta) ** 2 / (beta * r * r) >= 1:
        raise DomainError("the corrected expansion holds only for (1+beta)^2 / (beta r^2) < 1")


def corrected_prediction(beta, r, t: float, order: int = 2) -> float:
    """Predicted value of :func:`ctbt_lhs` through t^-order."""
    _check_subcritical(beta, r)
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    coeffs = prediction_coefficients(beta, r)
    return math.fsum(float(c) / t**i for i, c in enumerate(coeffs[: order + 1]))


def ctbt_lhs(beta, r, t: int) -> float:
    """sqrt(2 pi t) beta^(beta t + 1/2) (1+beta)^(-(1+beta) t - 1/2) r^((1+beta) t) c_{t, beta t}."""
    _check_subcritical(beta, r)
    k2 = Fraction(beta) * t
    if k2.denominator != 1:
        raise DomainError("beta t must be an integer")
    b = float(beta)
    rf = float(r)
    log_pref = (0.5 * math.log(2 * math.pi * t) + (b * t + 0.5) * math.log(b)
                - ((1 + b) * t + 0.5) * math.log1p(b) + (1 + b) * t * math.log(rf))
    return math.exp(log_pref + log_coeff(t, int(k2), rf))


def first_order_correction(k1: int, k2: int, r):
    """H in c_{t k1, t k2} = (leading) (1 - H/t + O(t^-2)), subcritical regime.

    Exact for rational r.
    """
    k1, k2 = _canonical(k1, k2)
    K = k1 + k2
    r2 = Fraction(r) ** 2 if isinstance(r, (int, Fraction)) else r * r
    P = k1 * k2
    D = r2 * P - K * K
    if D <= 0:
        raise DomainError("first-order correction needs the subcritical regime")
    num = (P * P * (k1 * k1 + P + k2 * k2) * r2 * r2
           + 2 * P * K * K * (5 * k1 * k1 - 7 * P + 5 * k2 * k2) * r2
           + K**4 * (k1 * k1 - 11 * P + k2 * k2))
    return num / (12 * D * D * P * K)


def scaled_prediction(k1: int, k2: int, r, t: int, order: int = 2) -> float:
    """Prediction for :func:`scaled_coeff`.

    Subcritical: the corrected expansion in T = t k1 with beta = k2/k1, rescaled
    by sqrt(2 pi k1 k2 / K).  Otherwise the limit constant.
    """
    rep = classify(k1, k2, r)
    if rep.regime is not Regime.SUBCRITICAL:
        return rep.limit_constant
    beta = Fraction(rep.k2, rep.k1)
    K = rep.k1 + rep.k2
    scale = math.sqrt(2 * math.pi * rep.k1 * rep.k2 / K)
    return corrected_prediction(beta, r, t * rep.k1, order) / scale


# coefficients of 1/t .. 1/t^4 for (k1, k2, r) = (2, 1, 3)
MELCZER_COEFFS = (
    Fraction(-55, 72),
    Fraction(26065, 10368),
    Fraction(-32881015, 2239488),
    Fraction(78037754977, 644972544),
)


def melczer_reference(t: float) -> float:
    """sqrt(3) 4^-t / sqrt(pi t) (1 + sum_i MELCZER_COEFFS[i] / t^(i+1)) for c_{2t, t} at r = 3."""
    if t <= 0:
        raise DomainError("t must be positive")
    poly = math.fsum([1.0] + [float(c) / t ** (i + 1) for i, c in enumerate(MELCZER_COEFFS)])
    return math.sqrt(3 / (math.pi * t)) * math.exp(-t * math.log(4)) * poly


def h_coefficients(beta, a, j: int) -> tuple:
    """(h1, h2): the t^-1 and t^-2 coefficients multiplying y^j in the 2F1 expansion."""
    if j < 0:
        raise DomainError("j must be nonnegative")
    bt = 1 + beta
    e = bt - a
    h1 = -j / a + Fraction(j * (j - 1), 2) * (a - bt) / (a * bt)
    h2 = (j / a**2
          + Fraction(j * (j - 1), 2) * (5 * e + 2 * a) / (a**2 * bt)
          + Fraction(j * (j - 1) * (j - 2), 6) * e * (7 * bt - 2 * a) / (a**2 * bt**2)
          + Fraction(j * (j - 1) * (j - 2) * (j - 3), 8) * e**2 / (a**2 * bt**2))
    return h1, h2


def h2_expanded(beta, a, j: int):
    """h2 as a sum of three products of Pochhammer-type factors."""
    bt = 1 + beta
    return (Fraction((3 * j + 1) * j * (j + 1) * (j + 2), 24) / a**2
            - Fraction(j * j * (j - 1) * (j + 1), 4) / (bt * a)
            + Fraction((3 * j - 1) * j * (j - 1) * (j - 2), 24) / bt**2)


# ---------------------------------------------------------------------------
# Binomial sum
# ---------------------------------------------------------------------------


def binomial_sum_limit(k1: int, k2: int) -> Fraction:
    """(1/4) / (p - 1/2) with p = k1/(k1+k2)."""
    if k1 <= k2 or k2 < 1:
        raise DomainError("need k1 > k2 >= 1")
    p = Fraction(k1, k1 + k2)
    return Fraction(1, 4) / (p - Fraction(1, 2))


def binomial_sum(k1: int, k2: int, t: int, tol: float = 1e-16) -> float:
    """sum_i C(t K + 2i, t k1 + i) p^(t k1 + i) (1-p)^(t k2 + i), p = k1/K, K = k1 + k2.

    The sum is C(tK, t k1) p^(t k1) (1-p)^(t k2) 3F2(1, (tK+1)/2, (tK+2)/2; t k1+1, t k2+1; 4p(1-p)),
    evaluated in log space.  ``tol`` is relative.
    """
    if k1 == k2:
        raise DomainError("k1 = k2 gives p = 1/2, where the sum diverges")
    if k1 < k2 or k2 < 1 or t < 1:
        raise DomainError("need k1 > k2 >= 1 and t >= 1")
    K = k1 + k2
    n1, n2 = t * k1, t * k2
    lp, lq = math.log(k1 / K), math.log(k2 / K)
    log_first = (math.lgamma(t * K + 1) - math.lgamma(n1 + 1) - math.lgamma(n2 + 1)
                 + n1 * lp + n2 * lq)
    x = 4 * k1 * k2 / (K * K)
    tail = log_hyper_positive((1, (t * K + 1) / 2, (t * K + 2) / 2), (n1 + 1, n2 + 1), x, tol)
    return math.exp(log_first + tail.log_value)


def binomial_sum_term(k1: int, k2: int, t: int, i: int) -> Fraction:
    """Exact i-th term, written as C(.) k1^(t k1 + i) k2^(t k2 + i) / (k1+k2)^(t K + 2i)."""
    K = k1 + k2
    return Fraction(math.comb(t * K + 2 * i, t * k1 + i) * k1 ** (t * k1 + i) * k2 ** (t * k2 + i),
                    K ** (t * K + 2 * i))
