"""Pochhammer symbols, 2F1 / 3F2 series and the identities built on them.

All series are summed term by term from the ratio recurrence

    t_{n+1} / t_n = x * prod(a_i + n) / (prod(b_j + n) * (n + 1))

with a rigorous geometric tail bound.  Values are binary doubles by default,
``mpmath`` numbers when a decimal precision is requested (explicitly through
``dps`` or through :func:`stabspec.config.use_precision`), and exact
``Fraction`` values for terminating series whose inputs are all rational.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, NamedTuple, Sequence

import mpmath

from . import config
from .errors import ConvergenceError, DomainError, PoleError, RangeError

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-15
MAX_TERMS = 1_000_000
SLOW_TERMS = 20_000
# nonterminating series closer than this to |x| = 1 are rejected
EDGE = 1e-12

Number = Any  # float | int | Fraction | mpmath.mpf


@dataclass(frozen=True)
class SeriesValue:
    """A summed series: value, number of terms used, and a bound on the truncated tail."""

    value: Number
    terms_used: int
    tail_bound: float

    def __float__(self) -> float:
        return float(self.value)


class LogSeriesValue(NamedTuple):
    """Logarithm of a positive series, with a relative tail bound."""

    log_value: float
    terms_used: int
    rel_tail_bound: float


class Params2F1(NamedTuple):
    a: Number
    b: Number
    c: Number
    x: Number


class Params3F2(NamedTuple):
    a1: Number
    a2: Number
    a3: Number
    b1: Number
    b2: Number
    x: Number


@lru_cache(maxsize=None)
def mp_context(dps: int) -> mpmath.MPContext:
    """A private mpmath context; never mutated after creation."""
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


def to_ctx(ctx: mpmath.MPContext, v: Number) -> Any:
    """Exact conversion of int / Fraction / float into ``ctx``."""
    if isinstance(v, Fraction):
        return ctx.mpf(v.numerator) / v.denominator
    return ctx.mpf(v)


def _is_rational(v: Number) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _nonpositive_int(v: Number) -> bool:
    if isinstance(v, int):
        return v <= 0
    if isinstance(v, Fraction):
        return v.denominator == 1 and v <= 0
    if isinstance(v, float):
        return v <= 0 and v.is_integer()
    return bool(v <= 0 and mpmath.isint(v))


# ---------------------------------------------------------------------------
# Pochhammer
# ---------------------------------------------------------------------------


def pochhammer(q: Number, n: int) -> Number:
    """Rising factorial (q)_n = q (q+1) ... (q+n-1), with (q)_0 = 1.

    Integer and Fraction arguments give exact results; floats (including
    integral floats, which are multiplied exactly and rounded once) give a
    float and raise :class:`RangeError` on overflow.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if _is_rational(q):
        return math.prod((q + i for i in range(n)), start=type(q)(1))
    if isinstance(q, float) and q.is_integer() and abs(q) < 2**53:
        exact = math.prod(range(int(q), int(q) + n))
        try:
            return float(exact)
        except OverflowError:
            raise RangeError(f"({q})_{n} overflows; use log_pochhammer") from None
    out = 1.0
    for i in range(n):
        out *= q + i
    if not math.isfinite(out):
        raise RangeError(f"({q})_{n} overflows; use log_pochhammer")
    return out


def log_pochhammer(q: float, n: int) -> float:
    """log((q)_n) for q > 0."""
    if q <= 0:
        raise DomainError("log_pochhammer needs q > 0")
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n <= 256:
        # chunked product keeps the rounding error at a few ulps per factor
        parts = []
        prod = 1.0
        for i in range(n):
            prod *= q + i
            if prod > 1e280 or prod < 1e-280:
                parts.append(math.log(prod))
                prod = 1.0
        parts.append(math.log(prod))
        return math.fsum(parts)
    ctx = mp_context(40)
    qq = to_ctx(ctx, q)
    return float(ctx.loggamma(qq + n) - ctx.loggamma(qq))


# ---------------------------------------------------------------------------
# Series engine
# ---------------------------------------------------------------------------


def tail_ratio_bound(numer: Sequence[Number], denom: Sequence[Number], x: Number, n: int) -> float:
    """Upper bound on |t_{m+1}/t_m| over all m >= n.

    Numerators are paired with the denominators plus the implicit n! factor.
    Each pair (a + m)/(b + m) is monotone once m exceeds -a and -b, so its
    supremum over m >= n is max(|a + n|/|b + n|, 1).  Returns inf when n is
    not yet past every sign change.
    """
    bottoms = list(denom) + [1]
    q = abs(float(x))
    for a, b in zip(numer, bottoms):
        fa, fb = float(a), float(b)
        if n <= -fa or n <= -fb:
            return math.inf
        q *= max(abs(fa + n) / abs(fb + n), 1.0)
    return q


def _terminating_length(numer: Sequence[Number]) -> int | None:
    cuts = [int(-float(a)) for a in numer if _nonpositive_int(a)]
    return min(cuts) if cuts else None


def _resolve_ctx(dps: int | None) -> mpmath.MPContext | None:
    if dps is None:
        dps = config.working_dps()
    return mp_context(dps) if dps else None


def hyper_series(
    numer: Sequence[Number],
    denom: Sequence[Number],
    x: Number,
    tol: float | None = None,
    *,
    dps: int | None = None,
    max_terms: int = MAX_TERMS,
) -> SeriesValue:
    """Sum the generalized hypergeometric series pFq with p = q + 1."""
    if len(numer) != len(denom) + 1:
        raise ValueError("only p = q + 1 series are supported")
    ctx = _resolve_ctx(dps)
    if tol is None:
        # absolute target: DEFAULT_TOL for doubles, near the working precision otherwise
        tol = DEFAULT_TOL if ctx is None else 10.0 ** (2 - ctx.dps)
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = _terminating_length(numer)
    if m is not None:
        return _terminating_sum(numer, denom, x, m, dps)
    for b in denom:
        if _nonpositive_int(b):
            raise PoleError(f"denominator parameter {b} is a nonpositive integer")
    if abs(float(x)) >= 1 - EDGE:
        raise DomainError(f"nonterminating series needs |x| < 1, got {x}")

    fnumer = [float(a) for a in numer]
    fdenom = [float(b) for b in denom]
    fx = float(x)
    if all(_is_rational(v) for v in (*numer, *denom)):
        # (P/Q + n) = (P + Q n)/Q: the term ratio is a constant times an integer quotient
        top = [(Fraction(a).numerator, Fraction(a).denominator) for a in numer]
        bot = [(Fraction(b).numerator, Fraction(b).denominator) for b in denom]
        scale = Fraction(math.prod(d for _, d in bot), math.prod(d for _, d in top))
        step = to_ctx(ctx, x) * to_ctx(ctx, scale) if ctx is not None else fx * float(scale)

        def ratio_at(n):
            num = math.prod(p + d * n for p, d in top)
            den = math.prod(p + d * n for p, d in bot) * (n + 1)
            return step * num / den
    else:
        if ctx is not None:
            cnumer = [to_ctx(ctx, a) for a in numer]
            cdenom = [to_ctx(ctx, b) for b in denom]
            cx = to_ctx(ctx, x)
        else:
            cnumer, cdenom, cx = fnumer, fdenom, fx

        def ratio_at(n):
            ratio = cx / (n + 1)
            for a in cnumer:
                ratio *= a + n
            for b in cdenom:
                ratio /= b + n
            return ratio

    term = ctx.mpf(1) if ctx is not None else 1.0
    terms = [term]
    tail = math.inf
    n = 0
    while True:
        term *= ratio_at(n)
        n += 1
        terms.append(term)
        if term == 0:
            tail = 0.0
            break
        q = tail_ratio_bound(fnumer, fdenom, fx, n)
        if q < 1:
            tail = abs(float(term)) * q / (1 - q)
            if tail <= tol:
                break
        if n >= max_terms:
            raise ConvergenceError(f"series did not reach tol={tol} in {max_terms} terms")
    if n > SLOW_TERMS:
        log.debug("slow convergence: %d terms at x=%s", n, fx)
    value = ctx.fsum(terms) if ctx is not None else math.fsum(terms)
    return SeriesValue(value, len(terms), tail)


def _terminating_sum(numer, denom, x, m: int, dps: int | None) -> SeriesValue:
    exact = all(_is_rational(v) for v in (*numer, *denom, x))
    ctx = None if exact else _resolve_ctx(dps)
    if exact:
        term: Any = Fraction(1)
        x = Fraction(x)
    elif ctx is not None:
        numer = [to_ctx(ctx, a) for a in numer]
        denom = [to_ctx(ctx, b) for b in denom]
        x = to_ctx(ctx, x)
        term = ctx.mpf(1)
    else:
        numer = [float(a) for a in numer]
        denom = [float(b) for b in denom]
        x = float(x)
        term = 1.0
    terms = [term]
    for n in range(m):
        ratio = x / (n + 1)
        for a in numer:
            ratio *= a + n
        for b in denom:
            if b + n == 0:
                raise PoleError(f"denominator parameter {b} reached zero at index {n}")
            ratio /= b + n
        term *= ratio
        terms.append(term)
    if exact:
        value = sum(terms, Fraction(0))
    elif ctx is not None:
        value = ctx.fsum(terms)
    else:
        value = math.fsum(terms)
    return SeriesValue(value, len(terms), 0.0)


def log_hyper_positive(
    numer: Sequence[float],
    denom: Sequence[float],
    x: float,
    rtol: float = 1e-16,
    *,
    max_terms: int = MAX_TERMS,
) -> LogSeriesValue:
    """log of a pFq series whose parameters and argument are all positive.

    Terms are carried as logarithms, so the sum may exceed the double range.
    """
    if len(numer) != len(denom) + 1:
        raise ValueError("only p = q + 1 series are supported")
    if x <= 0 or any(v <= 0 for v in (*numer, *denom)):
        raise DomainError("log_hyper_positive needs positive parameters and argument")
    if x >= 1 - EDGE:
        raise DomainError(f"series needs x < 1, got {x}")
    numer = [float(a) for a in numer]
    denom = [float(b) for b in denom]
    log_x = math.log(x)
    lt = 0.0
    logs = [lt]
    top, scaled = 0.0, 1.0  # running sum is exp(top) * scaled
    n = 0
    rel_tail = math.inf
    while True:
        step = log_x - math.log(n + 1)
        for a in numer:
            step += math.log(a + n)
        for b in denom:
            step -= math.log(b + n)
        lt += step
        n += 1
        logs.append(lt)
        if lt > top:
            scaled = scaled * math.exp(top - lt) + 1.0
            top = lt
        else:
            scaled += math.exp(lt - top)
        q = tail_ratio_bound(numer, denom, x, n)
        if q < 1:
            rel_tail = math.exp(lt - top - math.log(scaled)) * q / (1 - q)
            if rel_tail <= rtol:
                break
        if n >= max_terms:
            raise ConvergenceError(f"series did not reach rtol={rtol} in {max_terms} terms")
    top = max(logs)
    total = math.fsum(math.exp(v - top) for v in logs)
    return LogSeriesValue(top + math.log(total), len(logs), rel_tail)


def gauss_2f1(a: Number, b: Number, c: Number, x: Number, tol: float | None = None,
              *, dps: int | None = None) -> SeriesValue:
    """2F1(a, b; c; x) by direct summation.

    Raises DomainError for a nonterminating series with |x| >= 1 and
    PoleError when c reaches a nonpositive integer before termination.
    """
    return hyper_series((a, b), (c,), x, tol, dps=dps)


def hyper_3f2(a1: Number, a2: Number, a3: Number, b1: Number, b2: Number, x: Number,
              tol: float | None = None, *, dps: int | None = None) -> SeriesValue:
    """3F2(a1, a2, a3; b1, b2; x) by direct summation."""
    return hyper_series((a1, a2, a3), (b1, b2), x, tol, dps=dps)


# ---------------------------------------------------------------------------
# Contiguous relations and transformations
# ---------------------------------------------------------------------------


def _normalized(pieces: Sequence[Number]) -> float:
    """Sum of the pieces divided by max(1, largest |piece|)."""
    floats = [float(p) for p in pieces]
    scale = max([1.0] + [abs(p) for p in floats])
    if any(not isinstance(p, float) for p in pieces):
        total = float(sum(pieces[1:], pieces[0]))
    else:
        total = math.fsum(floats)
    return total / scale


def residual_cont1(a, a2, a3, b, b2, x, tol: float | None = None) -> float:
    """b F(a;b) - a F(a+1;b+1) + (a-b) F(a;b+1), all 3F2 with a2, a3 / b2 fixed.

    Normalized by the largest of the three products (and at least 1).
    """
    f0 = hyper_3f2(a, a2, a3, b, b2, x, tol).value
    f1 = hyper_3f2(a + 1, a2, a3, b + 1, b2, x, tol).value
    f2 = hyper_3f2(a, a2, a3, b + 1, b2, x, tol).value
    return _normalized([b * f0, -a * f1, (a - b) * f2])


def residual_cont2(a, b, c, d, e, x, tol: float | None = None) -> float:
    """b c x F(a+1,b+1,c+1; d+1,e+1) + d e (F(a,b,c; d,e) - F(a+1,b,c; d,e)), normalized."""
    f0 = hyper_3f2(a + 1, b + 1, c + 1, d + 1, e + 1, x, tol).value
    f1 = hyper_3f2(a, b, c, d, e, x, tol).value
    f2 = hyper_3f2(a + 1, b, c, d, e, x, tol).value
    return _normalized([b * c * x * f0, d * e * f1, -d * e * f2])


def residual_cont3(a, b, c, x, tol: float | None = None) -> float:
    """(b-c) F(a,b-1;c) - a(x-1) F(a+1,b;c) + (c-a-b) F(a,b;c), all 2F1, normalized."""
    f0 = gauss_2f1(a, b - 1, c, x, tol).value
    f1 = gauss_2f1(a + 1, b, c, x, tol).value
    f2 = gauss_2f1(a, b, c, x, tol).value
    return _normalized([(b - c) * f0, -a * (x - 1) * f1, (c - a - b) * f2])


# beyond this |x/(x-1)| the transformed series is summed by mpmath's continuation
PFAFF_DIRECT_LIMIT = 0.9
CONTINUATION_DPS = 30


def pfaff_rhs(a, b, c, x, tol: float | None = None, *, dps: int | None = None) -> SeriesValue:
    """(1-x)^(-a) 2F1(a, c-b; c; x/(x-1)), the Pfaff-transformed side of 2F1(a, b; c; x)."""
    if x >= 1:
        raise DomainError(f"Pfaff transformation needs x < 1, got {x}")
    ctx = _resolve_ctx(dps)
    if ctx is not None:
        xx = to_ctx(ctx, x)
        w = xx / (xx - 1)
        pref = (1 - xx) ** (-to_ctx(ctx, a))
    else:
        w = float(x) / (float(x) - 1)
        pref = (1 - float(x)) ** (-float(a))
    terminating = _nonpositive_int(a) or _nonpositive_int(c - b)
    if terminating or abs(float(w)) <= PFAFF_DIRECT_LIMIT:
        inner = gauss_2f1(a, c - b, c, w, tol, dps=dps)
        return SeriesValue(pref * inner.value, inner.terms_used, abs(float(pref)) * inner.tail_bound)
    # w <= -0.9: outside the disk of convergence of the transformed series
    mp = mp_context(CONTINUATION_DPS)
    inner = mp.hyp2f1(to_ctx(mp, a), to_ctx(mp, c - b), to_ctx(mp, c), to_ctx(mp, w))
    value = pref * (float(inner) if ctx is None else to_ctx(ctx, inner))
    return SeriesValue(value, 0, abs(float(value)) * 10.0 ** (5 - CONTINUATION_DPS))


def quadratic_rhs(a, b, x, tol: float | None = None, *, dps: int | None = None) -> SeriesValue:
    """Quadratic-transformation side of 2F1(a, b; a+b-1/2; x) for 0 <= x < 1."""
    if not 0 <= x < 1:
        raise DomainError(f"quadratic transformation needs 0 <= x < 1, got {x}")
    ctx = _resolve_ctx(dps)
    if ctx is not None:
        aa, xx = to_ctx(ctx, a), to_ctx(ctx, x)
        s = ctx.sqrt(1 - xx)
    else:
        aa, xx = float(a), float(x)
        s = math.sqrt(1 - xx)
    arg = (s - 1) / (s + 1)
    pref = (1 - xx) ** -0.5 * ((1 + s) / 2) ** (1 - 2 * aa)
    half = Fraction(1, 2) if _is_rational(a) and _is_rational(b) else 0.5
    inner = gauss_2f1(2 * a - 1, a - b + half, a + b - half, arg, tol, dps=dps)
    return SeriesValue(pref * inner.value, inner.terms_used, abs(float(pref)) * inner.tail_bound)


# ---------------------------------------------------------------------------
# The 3F2 of the coefficient formula and its reductions to 2F1
# ---------------------------------------------------------------------------


def _check_k(k1: int, k2: int, x) -> None:
    if k1 < 1 or k2 < 1:
        raise DomainError("k1 and k2 must be positive integers")
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x}")


def coefficient_3f2(k1: int, k2: int, x: Number, tol: float | None = None,
                    *, dps: int | None = None) -> SeriesValue:
    """3F2(1, (k1+k2)/2 + 1, (k1+k2+1)/2; k1+1, k2+1; x) by raw summation."""
    K = k1 + k2
    return hyper_3f2(1, Fraction(K, 2) + 1, Fraction(K + 1, 2), k1 + 1, k2 + 1, x, tol, dps=dps)


def _log10_closed_term(k1: int, k2: int, x: float) -> float:
    s = math.sqrt(1 - x)
    K = k1 + k2
    ln = (math.lgamma(k1 + 1) + math.lgamma(k2 + 1) - math.lgamma(K + 1) + K * math.log(2)
          - k2 * math.log(x) + (k2 - k1) * math.log1p(s) - math.log(s))
    return ln / math.log(10)


def _cancellation_ctx(k1: int, k2: int, x, dps: int | None) -> mpmath.MPContext:
    if dps is None:
        # enough digits to absorb the cancellation against the closed term
        dps = 30 + max(0, math.ceil(_log10_closed_term(k1, k2, float(x))))
    return mp_context(dps)


def _closed_term(ctx, k1: int, k2: int, X, s):
    K = k1 + k2
    ratio = ctx.mpf(math.factorial(k1) * math.factorial(k2)) / math.factorial(K)
    return ratio * ctx.mpf(2) ** K / X**k2 * (1 + s) ** (k2 - k1) / s


# absolute truncation target for the high-precision 2F1 pieces
_HP_TOL = 1e-28


def _hp_pieces(k1: int, k2: int, x, dps: int | None):
    ctx = _cancellation_ctx(k1, k2, x, dps)
    X = to_ctx(ctx, x)
    s = ctx.sqrt(1 - X)
    K = k1 + k2
    f_minus = hyper_series((1, K), (k1 + 1,), (1 - s) / 2, _HP_TOL, dps=ctx.dps).value
    f_plus = hyper_series((1, K), (k1 + 1,), (1 + s) / 2, _HP_TOL, dps=ctx.dps).value
    return ctx, X, s, f_minus, f_plus


def reduce_part1(k1: int, k2: int, x: Number, *, dps: int | None = None) -> float:
    """First 2F1 reduction of :func:`coefficient_3f2`.

    Closed binomial/power term plus k2/((k1+k2) sqrt(1-x)) times the difference
    of 2F1(1, k1+k2; k1+1; .) at (1 -/+ sqrt(1-x))/2.  The two pieces cancel
    heavily for small x, so everything runs in extended precision sized to the
    closed term.  Kept for identity testing; :func:`reduce_part2` is the
    production route.
    """
    _check_k(k1, k2, x)
    ctx, X, s, f_minus, f_plus = _hp_pieces(k1, k2, x, dps)
    K = k1 + k2
    value = _closed_term(ctx, k1, k2, X, s) + ctx.mpf(k2) / (K * s) * (f_minus - f_plus)
    return float(value)


def reduce_part2(k1: int, k2: int, x: float, tol: float | None = None) -> float:
    """Second 2F1 reduction of :func:`coefficient_3f2`; both arguments are <= 1/2.

    (k2 F(1, K; k1+1; z) + k1 F(1, K; k2+1; z)) / (K sqrt(1-x)),
    K = k1 + k2, z = (1 - sqrt(1-x))/2.
    """
    _check_k(k1, k2, x)
    K = k1 + k2
    s = math.sqrt(1 - float(x))
    z = (1 - s) / 2
    f1 = float(hyper_series((1, K), (k1 + 1,), z, tol, dps=0).value)
    f2 = f1 if k1 == k2 else float(hyper_series((1, K), (k2 + 1,), z, tol, dps=0).value)
    return (k2 * f1 + k1 * f2) / (K * s)


def log_reduce_part2(k1: int, k2: int, x: float, rtol: float = 1e-16) -> float:
    """log of :func:`reduce_part2`, summed in log space (no overflow for large k)."""
    _check_k(k1, k2, x)
    K = k1 + k2
    s = math.sqrt(1 - float(x))
    z = (1 - s) / 2
    l1 = log_hyper_positive((1, K), (k1 + 1,), z, rtol).log_value
    l2 = l1 if k1 == k2 else log_hyper_positive((1, K), (k2 + 1,), z, rtol).log_value
    a, b = math.log(k2) + l1, math.log(k1) + l2
    top = max(a, b)
    return top + math.log(math.exp(a - top) + math.exp(b - top)) - math.log(K * s)


def _check_ordered(k1: int, k2: int, x) -> None:
    _check_k(k1, k2, x)
    if k1 < k2:
        raise DomainError("the terminating-series identities need k1 >= k2")


def terminating_3f2(k1: int, k2: int, x: Number, *, dps: int | None = None) -> SeriesValue:
    """3F2(1, 1-k2, 1-k1; 1-(k1+k2)/2, (3-k1-k2)/2; 1/x), a polynomial in 1/x.

    Always summed exactly from the binary value of x; the result is a Fraction
    for rational x, otherwise rounded to the working precision.  (It multiplies
    a term that cancels against the closed term, so float rounding of 1/x
    would be amplified.)
    """
    _check_ordered(k1, k2, x)
    K = k1 + k2
    inv = 1 / Fraction(x)
    exact = hyper_3f2(1, 1 - k2, 1 - k1, 1 - Fraction(K, 2), Fraction(3 - K, 2), inv)
    if _is_rational(x):
        return exact
    ctx = _resolve_ctx(dps)
    value = to_ctx(ctx, exact.value) if ctx is not None else float(exact.value)
    return SeriesValue(value, exact.terms_used, 0.0)


def corst_rhs(k1: int, k2: int, x: Number, *, dps: int | None = None):
    """2F1-difference side of the terminating identity, as an mpmath number.

    (k1+k2-1)/(4 k1) * x/sqrt(1-x) * [F(1, K; k1+1; (1+s)/2) - F(1, K; k1+1; (1-s)/2)]
    """
    _check_ordered(k1, k2, x)
    ctx, X, s, f_minus, f_plus = _hp_pieces(k1, k2, x, dps)
    K = k1 + k2
    return ctx.mpf(K - 1) / (4 * k1) * X / s * (f_plus - f_minus)


def reduce_via_euler2(k1: int, k2: int, x: Number, *, dps: int | None = None) -> float:
    """Closed term minus 4 k1 k2 / ((K-1) K x) times :func:`terminating_3f2`."""
    _check_ordered(k1, k2, x)
    ctx = _cancellation_ctx(k1, k2, x, dps)
    X = to_ctx(ctx, x)
    s = ctx.sqrt(1 - X)
    K = k1 + k2
    T = to_ctx(ctx, terminating_3f2(k1, k2, x, dps=ctx.dps).value)
    coef = ctx.mpf(4 * k1 * k2) / ((K - 1) * K) / X
    return float(_closed_term(ctx, k1, k2, X, s) - coef * T)


def reduce_via_corst(k1: int, k2: int, x: Number, *, dps: int | None = None) -> float:
    """Same as :func:`reduce_via_euler2` with the polynomial replaced by :func:`corst_rhs`."""
    _check_ordered(k1, k2, x)
    ctx = _cancellation_ctx(k1, k2, x, dps)
    X = to_ctx(ctx, x)
    s = ctx.sqrt(1 - X)
    K = k1 + k2
    coef = ctx.mpf(4 * k1 * k2) / ((K - 1) * K) / X
    return float(_closed_term(ctx, k1, k2, X, s) - coef * corst_rhs(k1, k2, x, dps=ctx.dps))


def euler2_residual(k1: int, k2: int, x: Number, *, dps: int | None = None) -> float:
    """(3F2 - euler2 route) / max(1, |3F2|), with the 3F2 summed at the same precision."""
    _check_ordered(k1, k2, x)
    ctx = _cancellation_ctx(k1, k2, x, dps)
    lhs = coefficient_3f2(k1, k2, x, _HP_TOL, dps=ctx.dps).value
    rhs = reduce_via_euler2(k1, k2, x, dps=ctx.dps)
    return float(lhs - rhs) / max(1.0, abs(float(lhs)))


def corst_residual(k1: int, k2: int, x: Number, *, dps: int | None = None) -> float:
    """(polynomial - 2F1 difference) / max(1, |polynomial|)."""
    rhs = corst_rhs(k1, k2, x, dps=dps)
    ctx = rhs.context
    lhs = to_ctx(ctx, terminating_3f2(k1, k2, x, dps=ctx.dps).value)
    return float(lhs - rhs) / max(1.0, abs(float(lhs)))
