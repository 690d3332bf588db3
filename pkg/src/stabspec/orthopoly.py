"""Bitorus inner product of the spectral density and its lexicographic orthonormal family."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .coeffs import CoeffGrid, check_r, coeff_grid, density_grid, intersecting_zero
from .errors import DomainError

Exponent = tuple[int, int]


class LaurentPolynomial:
    """Finite Laurent polynomial in (z1, z2) with real coefficients; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, float] | Iterable[tuple[Exponent, float]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, float] = {}
        for (e1, e2), c in items:
            key = (int(e1), int(e2))
            acc[key] = acc.get(key, 0) + c
        self._terms = MappingProxyType({k: v for k, v in sorted(acc.items()) if v != 0})

    @classmethod
    def monomial(cls, e1: int, e2: int, c: float = 1.0) -> LaurentPolynomial:
        return cls({(e1, e2): c})

    @classmethod
    def constant(cls, c: float) -> LaurentPolynomial:
        return cls({(0, 0): c})

    @property
    def terms(self) -> Mapping[Exponent, float]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({dict(self._terms)!r})"

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({k: -v for k, v in self})

    def __add__(self, other) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other)
        return LaurentPolynomial(list(self) + list(other))

    __radd__ = __add__

    def __sub__(self, other) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> LaurentPolynomial:
        return (-self) + other

    def __mul__(self, other) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial({k: v * other for k, v in self})
        return LaurentPolynomial(
            ((a1 + b1, a2 + b2), u * v) for (a1, a2), u in self for (b1, b2), v in other
        )

    __rmul__ = __mul__

    def shift(self, d1: int, d2: int) -> LaurentPolynomial:
        """Multiply by z1^d1 z2^d2."""
        return LaurentPolynomial({(e1 + d1, e2 + d2): c for (e1, e2), c in self})

    def reflect(self) -> LaurentPolynomial:
        """Substitute z -> 1/z (coefficients are real, so this is also the conjugate on the torus)."""
        return LaurentPolynomial({(-e1, -e2): c for (e1, e2), c in self})

    def evaluate(self, z1, z2):
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        out = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
        for (e1, e2), c in self:
            out = out + c * z1 ** e1 * z2 ** e2
        return out[()] if out.ndim == 0 else out

    def exponent_spread(self, other: LaurentPolynomial | None = None) -> int:
        """Largest |alpha_i - beta_i| over term pairs of self and other."""
        other = self if other is None else other
        if not len(self) or not len(other):
            return 0
        return max(
            max(abs(a1 - b1), abs(a2 - b2)) for (a1, a2) in self._terms for (b1, b2) in other._terms
        )


Z1 = LaurentPolynomial.monomial(1, 0)
Z2 = LaurentPolynomial.monomial(0, 1)


@lru_cache(maxsize=32)
def _table(r: float, kmax: int) -> CoeffGrid:
    return coeff_grid(kmax, r)


def coefficient_table(r: float, spread: int) -> CoeffGrid:
    """Read-only coefficient table covering |k_i| <= spread, rounded up to a power of two."""
    check_r(r)
    size = 1
    while size < spread:
        size *= 2
    return _table(float(r), size)


def inner_product(g: LaurentPolynomial, h: LaurentPolynomial, r: float) -> float:
    """<g, h> = sum_{alpha, beta} g_alpha h_beta c_{alpha - beta}(r)."""
    check_r(r)
    if not len(g) or not len(h):
        return 0.0
    table = coefficient_table(r, g.exponent_spread(h))
    s = math.fsum(
        u * v * table[a1 - b1, a2 - b2] for (a1, a2), u in g for (b1, b2), v in h
    )
    return s


def inner_product_quadrature(g: LaurentPolynomial, h: LaurentPolynomial, r: float, N: int = 256) -> float:
    """Trapezoidal value of the torus integral of g conj(h) f / (2 pi)^2."""
    check_r(r)
    theta = 2 * np.pi * np.arange(N) / N
    z = np.exp(1j * theta)
    z1, z2 = z[:, None], z[None, :]
    vals = g.evaluate(z1, z2) * np.conj(h.evaluate(z1, z2)) * density_grid(float(r), N)
    return float(vals.mean().real)


def stable_polynomial(r: float) -> LaurentPolynomial:
    check_r(r)
    return LaurentPolynomial({(0, 0): 1.0, (1, 0): -1 / r, (0, 1): -1 / r})


def reversed_polynomial(r: float) -> LaurentPolynomial:
    """q = z1 z2 - z1/r - z2/r."""
    check_r(r)
    return LaurentPolynomial({(1, 1): 1.0, (1, 0): -1 / r, (0, 1): -1 / r})


def reverse_identity_holds(r: float) -> bool:
    """Coefficient comparison of q against z1 z2 p(1/z1, 1/z2)."""
    return reversed_polynomial(r) == stable_polynomial(r).reflect().shift(1, 1)


def _mixed_root(r: float) -> float:
    return intersecting_zero(r).a


def _constant_norm(r: float) -> float:
    return (1 - 4 / r**2) ** 0.25


KINDS = ("constant", "z1", "z2", "q")


def basis_element(kind: str, index=None, r: float | None = None) -> LaurentPolynomial:
    """Member of the orthonormal family.

    kind "constant" takes no index, "z1"/"z2" take k >= 0 and "q" takes (k1, k2).
    """
    if r is None:
        raise DomainError("r is required")
    check_r(r)
    if kind == "constant":
        return LaurentPolynomial.constant(_constant_norm(r))
    if kind in ("z1", "z2"):
        k = int(index)
        if k < 0:
            raise DomainError(f"negative family index {k}")
        a = _mixed_root(r)
        scale = _constant_norm(r) / math.sqrt(1 - a * a)
        if kind == "z1":
            return LaurentPolynomial({(k + 1, 0): scale, (k, 0): -a * scale})
        return LaurentPolynomial({(0, k + 1): scale, (0, k): -a * scale})
    if kind == "q":
        k1, k2 = (int(i) for i in index)
        if k1 < 0 or k2 < 0:
            raise DomainError(f"negative family index ({k1}, {k2})")
        return reversed_polynomial(r).shift(k1, k2)
    raise DomainError(f"unknown basis kind {kind!r}")


def family_labels(kmax: int = 3, qmax: int = 2) -> list[tuple[str, object]]:
    labels: list[tuple[str, object]] = [("constant", None)]
    labels += [("z1", k) for k in range(kmax + 1)]
    labels += [("z2", k) for k in range(kmax + 1)]
    labels += [("q", (k1, k2)) for k1 in range(qmax + 1) for k2 in range(qmax + 1)]
    return labels


def label_text(kind: str, index) -> str:
    if kind == "constant":
        return "1"
    if kind == "q":
        return f"q[{index[0]},{index[1]}]"
    return f"{kind}[{index}]"


@dataclass(frozen=True)
class GramResult:
    matrix: np.ndarray
    max_off_diagonal: float
    max_diagonal_deviation: float
    labels: tuple[str, ...] = ()
    worst: tuple[tuple[str, str, float], ...] = field(default=())

    @property
    def max_deviation(self) -> float:
        return max(self.max_off_diagonal, self.max_diagonal_deviation)

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.max_deviation <= tol


def gram_matrix(elements: list[LaurentPolynomial], r: float) -> np.ndarray:
    n = len(elements)
    G = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = inner_product(elements[i], elements[j], r)
    return G


def gram_check(r: float, kmax: int = 3, qmax: int = 2, labels=None, n_worst: int = 5) -> GramResult:
    """Gram matrix of the selected family; default selection has 1 + 4 + 4 + 9 elements."""
    labels = family_labels(kmax, qmax) if labels is None else list(labels)
    elements = [basis_element(kind, idx, r) for kind, idx in labels]
    G = gram_matrix(elements, r)
    dev = np.abs(G - np.eye(len(G)))
    off = dev.copy()
    np.fill_diagonal(off, 0.0)
    names = tuple(label_text(*lab) for lab in labels)
    iu = np.triu_indices(len(G))
    order = np.argsort(-dev[iu], kind="stable")[:n_worst]
    worst = tuple((names[iu[0][m]], names[iu[1][m]], float(dev[iu][m])) for m in order)
    return GramResult(
        matrix=G,
        max_off_diagonal=float(off.max()) if len(G) else 0.0,
        max_diagonal_deviation=float(np.diag(dev).max()) if len(G) else 0.0,
        labels=names,
        worst=worst,
    )


def span_orthogonality(k1: int, k2: int, r: float) -> float:
    """max |<q-family(k1,k2), z1^l1 z2^l2>| over l1 <= k1+1, l2 <= k2+1 excluding the corner."""
    q = basis_element("q", (k1, k2), r)
    worst = 0.0
    for l1 in range(k1 + 2):
        for l2 in range(k2 + 2):
            if (l1, l2) == (k1 + 1, k2 + 1):
                continue
            worst = max(worst, abs(inner_product(q, LaurentPolynomial.monomial(l1, l2), r)))
    return worst


def section_orthogonality(k: int, r: float) -> float:
    """max |<z1^k (z1 - a), z1^l>| over 0 <= l <= k."""
    a = _mixed_root(r)
    g = LaurentPolynomial({(k + 1, 0): 1.0, (k, 0): -a})
    return max(abs(inner_product(g, LaurentPolynomial.monomial(l, 0), r)) for l in range(k + 1))


def norm_identities(r: float) -> dict[str, tuple[float, float]]:
    """(computed, closed form) pairs for the three norm identities."""
    a = _mixed_root(r)
    w = 1 / math.sqrt(1 - 4 / r**2)
    one = LaurentPolynomial.constant(1.0)
    lin1 = Z1 - a
    lin2 = Z2 - a
    q = reversed_polynomial(r)
    return {
        "one": (inner_product(one, one, r), w),
        "z1_minus_a": (inner_product(lin1, lin1, r), (1 - a * a) * w),
        "z2_minus_a": (inner_product(lin2, lin2, r), (1 - a * a) * w),
        "q": (inner_product(q, q, r), 1.0),
    }


def moment_matrix(kmax: int, r: float) -> np.ndarray:
    """Block Toeplitz matrix <z^l, z^m> over monomials with 0 <= l_i <= kmax, lexicographic order."""
    mons = [(l1, l2) for l1 in range(kmax + 1) for l2 in range(kmax + 1)]
    table = coefficient_table(r, kmax)
    return np.array([[table[a1 - b1, a2 - b2] for (b1, b2) in mons] for (a1, a2) in mons])
