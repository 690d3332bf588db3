"""Spectral density coefficients of the stable polynomial 1 - (z1 + z2)/r.

Submodules
----------
hypergeom    Pochhammer symbols, 2F1/3F2 series, contiguous relations and reductions.
largeparam   Large-parameter expansion of 2F1(1, (1+beta)t; at+1; x).
coeffs       Fourier coefficients c_{k1,k2} with series and quadrature oracles.
asymptotics  Radial asymptotics of c_{t k1, t k2}.
orthopoly    Bitorus inner product and the orthonormal polynomial family.
cli          Command-line entry point.
"""

__version__ = "0.1.0"
