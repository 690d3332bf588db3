"""Fourier coefficients c_{k1,k2} of the spectral density 1/|1 - (z1 + z2)/r|^2.

Closed forms in both quadrant classes, two independent oracles (a positive
single series and the trapezoidal rule on the torus), the recurrence the
coefficients satisfy, and a full table over [-kmax, kmax]^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import render
from .errors import DomainError, GridSizeError, QuadrantError, ResolutionError
from .hypergeom import SeriesValue, log_reduce_part2, reduce_part2

R_MIN = 2 + 1e-6
LOG_SWITCH = 60
MAX_GRID_K = 4096
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class CoeffKey:
    k1: int
    k2: int
    r: float

    def __post_init__(self) -> None:
        if not (isinstance(self.k1, int) and isinstance(self.k2, int)):
            raise DomainError("k1 and k2 must be integers")
        check_r(self.r)

    @property
    def mixed(self) -> bool:
        return self.k1 * self.k2 <= 0

    @property
    def order(self) -> int:
        return abs(self.k1) + abs(self.k2)


def check_r(r: float) -> None:
    if not r >= R_MIN:
        raise DomainError(f"r must be at least 2 + 1e-6 (stability needs r > 2), got {r}")


def _key(k1, k2=None, r=None) -> CoeffKey:
    if isinstance(k1, CoeffKey):
        return k1
    return CoeffKey(int(k1), int(k2), r)


@dataclass(frozen=True)
class IntersectingZero:
    """In-disk component a of the common zeros of p and its reverse; a + 1/a = r."""

    a: float
    a_inv: float


def intersecting_zero(r: float) -> IntersectingZero:
    if not r > 2:
        raise DomainError(f"r must exceed 2, got {r}")
    root = math.sqrt(r * r - 4)
    return IntersectingZero(2 / (r + root), (r + root) / 2)


def mixed_prefactor(r: float) -> float:
    """(1 - 4/r^2)^(-1/2) = c_{0,0}."""
    return 1 / math.sqrt(1 - 4 / (r * r))


def coeff_mixed(k1, k2=None, r=None) -> float:
    """c_{k1,k2} for k1 k2 <= 0: (1 - 4/r^2)^(-1/2) a^(|k1| + |k2|)."""
    key = _key(k1, k2, r)
    if not key.mixed:
        raise QuadrantError("coeff_mixed needs k1 * k2 <= 0")
    return mixed_prefactor(key.r) * intersecting_zero(key.r).a ** key.order


def _log_binom(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def coeff_positive(k1, k2=None, r=None) -> float:
    """c_{k1,k2} for k1 k2 > 0 via the 2F1 reduction of the 3F2 closed form."""
    key = _key(k1, k2, r)
    if key.mixed:
        raise QuadrantError("coeff_positive needs k1 * k2 > 0")
    m1, m2 = abs(key.k1), abs(key.k2)
    K = m1 + m2
    if K > LOG_SWITCH:
        return math.exp(log_coeff(key))
    x = 4 / (key.r * key.r)
    return math.comb(K, m1) / key.r**K * reduce_part2(m1, m2, x)


def coeff(k1, k2=None, r=None) -> float:
    """c_{k1,k2}(r) for any integer pair; c_{-k1,-k2} = c_{k1,k2}."""
    key = _key(k1, k2, r)
    return coeff_mixed(key) if key.mixed else coeff_positive(key)


def log_coeff(k1, k2=None, r=None) -> float:
    """log c_{k1,k2}, never forming the coefficient itself."""
    key = _key(k1, k2, r)
    if key.mixed:
        return -0.5 * math.log1p(-4 / key.r**2) + key.order * math.log(intersecting_zero(key.r).a)
    m1, m2 = abs(key.k1), abs(key.k2)
    K = m1 + m2
    x = 4 / (key.r * key.r)
    return _log_binom(K, m1) - K * math.log(key.r) + log_reduce_part2(m1, m2, x)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def coeff_series_oracle(k1, k2=None, r=None, tol: float = 1e-16) -> SeriesValue:
    """c_{k1,k2} as a single series of positive terms, summed directly.

    Same sign:  sum_i C(K + 2i, k1 + i) / r^(K + 2i),  K = |k1| + |k2|
    Mixed:      sum_i C(K + 2i, i) / r^(K + 2i)

    ``tol`` is relative to the partial sum.
    """
    key = _key(k1, k2, r)
    r = key.r
    x = 4 / (r * r)
    K = key.order
    if key.mixed:
        lo, hi = 0, K
    else:
        lo, hi = sorted((abs(key.k1), abs(key.k2)))
    # term ratio: x ((K+1)/2 + i)((K+2)/2 + i) / ((lo + 1 + i)(hi + 1 + i))
    numer = [(K + 1) / 2, (K + 2) / 2]
    denom = [lo + 1, hi + 1]
    if key.mixed:
        term = math.exp(-K * math.log(r))
    else:
        term = math.exp(_log_binom(K, lo) - K * math.log(r))
    terms = [term]
    i = 0
    while True:
        term *= x * (numer[0] + i) * (numer[1] + i) / ((denom[0] + i) * (denom[1] + i))
        i += 1
        terms.append(term)
        q = _pair_bound(numer, denom, x, i)
        if q < 1:
            tail = term * q / (1 - q)
            if tail <= tol * math.fsum(terms):
                break
        if i > 10_000_000:
            raise DomainError("series oracle failed to converge")
    return SeriesValue(math.fsum(terms), len(terms), tail)


def _pair_bound(numer, denom, x, n) -> float:
    # sup of the term ratio beyond index n; each factor (a+m)/(b+m) is monotone in m
    q = x
    for a, b in zip(numer, denom):
        q *= max((a + n) / (b + n), 1.0)
    return q


@lru_cache(maxsize=8)
def density_grid(r: float, N: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(N) / N
    z = np.exp(1j * theta)
    p = 1 - (z[:, None] + z[None, :]) / r
    return 1 / np.abs(p) ** 2


# contour radii are rounded to this lattice in log space so tables can be shared
RADIUS_STEP = 1 / 16


# the torus is kept a factor e^(ALIAS_DIGITS/N) inside the domain, which
# bounds the aliased coefficients by about e^-ALIAS_DIGITS
ALIAS_DIGITS = 24


def _log_majorant(u: float, v: float, k1: int, k2: int, r: float, margin: float = 0.0) -> float:
    # log of max |f(z) z^-k| over the torus |z1| = e^u, |z2| = e^v; convex in (u, v)
    s = math.exp(u) + math.exp(v)
    si = math.exp(-u) + math.exp(-v)
    if s * math.exp(margin) >= r or si * math.exp(margin) >= r:
        return math.inf
    return -k1 * u - k2 * v - math.log1p(-s / r) - math.log1p(-si / r)


def contour_radii(k1: int, k2: int, r: float, N: int = 512) -> tuple[float, float]:
    """Torus radii (rho1, rho2) that minimize the integrand's dynamic range for c_{k1,k2}.

    f is analytic on {|z1| + |z2| < r, 1/|z1| + 1/|z2| < r}, so the defining
    integral may be taken over any torus inside that domain.  On the unit
    torus rounding limits the absolute accuracy to about 1e-16 c_{0,0}; on the
    minimizing torus the error is relative to c_{k1,k2} itself.  Falls back
    to the unit torus when N is too small for any margin.
    """
    margin = ALIAS_DIGITS / N
    u = v = 0.0
    best = _log_majorant(u, v, k1, k2, r, margin)
    if not math.isfinite(best):
        return 1.0, 1.0
    h = 0.5
    moves = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1))
    while h > RADIUS_STEP / 4:
        for du, dv in moves:
            val = _log_majorant(u + h * du, v + h * dv, k1, k2, r, margin)
            if val < best:
                best, u, v = val, u + h * du, v + h * dv
                break
        else:
            h /= 2
    iu, iv = round(u / RADIUS_STEP), round(v / RADIUS_STEP)
    # the feasible set is convex and contains the origin: step back toward it
    while not math.isfinite(_log_majorant(iu * RADIUS_STEP, iv * RADIUS_STEP, k1, k2, r, margin)):
        iu -= (iu > 0) - (iu < 0)
        iv -= (iv > 0) - (iv < 0)
    return math.exp(iu * RADIUS_STEP), math.exp(iv * RADIUS_STEP)


@lru_cache(maxsize=32)
def _contour_table(r: float, N: int, rho1: float, rho2: float) -> np.ndarray:
    theta = 2 * np.pi * np.arange(N) / N
    z1 = rho1 * np.exp(1j * theta)
    z2 = rho2 * np.exp(1j * theta)
    p = 1 - (z1[:, None] + z2[None, :]) / r
    q = 1 - (1 / z1[:, None] + 1 / z2[None, :]) / r
    table = np.fft.fft2(1 / (p * q)) / (N * N)
    table.flags.writeable = False
    return table


def coeff_quadrature_oracle(k1, k2=None, r=None, N: int = 512, radii="auto") -> float:
    """Trapezoidal rule for (2 pi)^-2 int f(z) z^-k dtheta dphi on an N x N torus grid.

    ``radii="auto"`` integrates over the torus from :func:`contour_radii`;
    ``radii=(1.0, 1.0)`` gives the plain unit-torus rule.
    """
    key = _key(k1, k2, r)
    if N < 1 or N < 4 * key.order:
        raise ResolutionError(f"N={N} is below 4 (|k1| + |k2|) = {4 * key.order}")
    rho1, rho2 = contour_radii(key.k1, key.k2, key.r, N) if radii == "auto" else radii
    if not math.isfinite(_log_majorant(math.log(rho1), math.log(rho2), 0, 0, key.r)):
        raise DomainError(f"torus radii {rho1, rho2} leave the domain of analyticity")
    table = _contour_table(float(key.r), N, float(rho1), float(rho2))
    value = table[key.k1 % N, key.k2 % N] * rho1 ** -key.k1 * rho2 ** -key.k2
    if abs(value.imag) > IMAG_TOL:
        raise ResolutionError(f"imaginary part {value.imag:.3e} exceeds {IMAG_TOL}")
    return float(value.real)


METHODS = ("closed", "series", "quadrature")


def coeff_with_bound(k1, k2=None, r=None, method: str = "closed", N: int = 512) -> tuple[float, float]:
    """(value, error estimate) of c_{k1,k2} by the named method.

    closed: rounding estimate; series: rigorous tail bound plus rounding;
    quadrature: aliasing estimate e^-ALIAS_DIGITS plus FFT rounding, both
    relative to the integrand's maximum on the chosen torus.
    """
    key = _key(k1, k2, r)
    eps = float(np.finfo(float).eps)
    if method == "closed":
        value = coeff(key)
        return value, 16 * eps * (key.order + 1) * abs(value)
    if method == "series":
        sv = coeff_series_oracle(key)
        return float(sv.value), float(sv.tail_bound) + 4 * eps * sv.terms_used * abs(float(sv.value))
    if method == "quadrature":
        value = coeff_quadrature_oracle(key, N=N)
        rho1, rho2 = contour_radii(key.k1, key.k2, key.r, N)
        peak = math.exp(_log_majorant(math.log(rho1), math.log(rho2), key.k1, key.k2, key.r))
        return value, peak * (4 * math.exp(-ALIAS_DIGITS) + 8 * eps * math.log2(N))
    raise DomainError(f"unknown method {method!r}")


def quadrature_table(r: float, N: int) -> np.ndarray:
    """All N x N unit-torus trapezoidal coefficients at once; entry [k1 % N, k2 % N]."""
    check_r(r)
    return np.fft.fft2(density_grid(float(r), N)).real / (N * N)


def recurrence_residual(k1, k2=None, r=None) -> float:
    """c_{k1,k2} - (c_{k1+1,k2} + c_{k1,k2+1})/r - s_{k1,k2}, which vanishes.

    s_{k1,k2} = C(k1+k2, k1)/r^(k1+k2) for k1, k2 >= 0 and 0 otherwise: the
    coefficients of f(z) * conj(p)(1/z) = 1/p(z).
    """
    key = _key(k1, k2, r)
    a, b, r = key.k1, key.k2, key.r
    source = math.exp(_log_binom(a + b, a) - (a + b) * math.log(r)) if a >= 0 and b >= 0 else 0.0
    return coeff(a, b, r) - (coeff(a + 1, b, r) + coeff(a, b + 1, r)) / r - source


# ---------------------------------------------------------------------------
# Grid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoeffGrid:
    """c_{k1,k2} for k1, k2 in [-kmax, kmax]; values[i, j] has k1 = i - kmax, k2 = j - kmax."""

    kmax: int
    r: float
    values: np.ndarray

    def __getitem__(self, k: tuple[int, int]) -> float:
        k1, k2 = k
        return float(self.values[k1 + self.kmax, k2 + self.kmax])

    def rows(self):
        for i, k1 in enumerate(range(-self.kmax, self.kmax + 1)):
            for j, k2 in enumerate(range(-self.kmax, self.kmax + 1)):
                yield k1, k2, float(self.values[i, j])

    def to_csv(self) -> str:
        return render.csv_table(("k1", "k2", "c"), self.rows())

    def to_json(self) -> str:
        data = [{"k1": a, "k2": b, "c": render.fmt(c)} for a, b, c in self.rows()]
        return render.json_document({"r": self.r, "kmax": self.kmax}, data)


def coeff_grid(kmax: int, r: float) -> CoeffGrid:
    """Row-major table; each distinct value is computed once by :func:`coeff`."""
    if kmax < 0:
        raise DomainError("kmax must be nonnegative")
    if kmax > MAX_GRID_K:
        raise GridSizeError(f"kmax={kmax} exceeds {MAX_GRID_K}")
    check_r(r)
    size = 2 * kmax + 1
    values = np.empty((size, size))
    cache: dict[tuple, float] = {}
    for i, k1 in enumerate(range(-kmax, kmax + 1)):
        for j, k2 in enumerate(range(-kmax, kmax + 1)):
            # canonical form: coefficients depend only on the sign class and |k1|, |k2|
            if k1 * k2 <= 0:
                ck = ("m", abs(k1) + abs(k2))
                args = (abs(k1) + abs(k2), 0)
            else:
                lo, hi = sorted((abs(k1), abs(k2)))
                ck = ("p", lo, hi)
                args = (lo, hi)
            if ck not in cache:
                cache[ck] = coeff(args[0], args[1], r)
            values[i, j] = cache[ck]
    return CoeffGrid(kmax, r, values)
