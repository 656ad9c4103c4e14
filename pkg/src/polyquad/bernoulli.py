"""Bernoulli polynomials in the divided-by-factorial normalization, and
Richardson-type acceleration weights for ratio-2 lattice refinements.

The recursion used throughout is B_0 = 1, B_{j+1}' = B_j, and the integral of
B_{j+1} over [0, 1] equals zero; this B_j is the classical Bernoulli polynomial
divided by j!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomials import Poly1D
from .util import solve_exact

_CACHE: list[Poly1D] = [Poly1D([1])]


@dataclass(frozen=True)
class BernoulliPoly:
    """Degree-j Bernoulli polynomial (normalized recursion)."""

    degree: int
    poly: Poly1D

    def __call__(self, x):
        return self.poly(x)


def bernoulli_poly(j: int) -> BernoulliPoly:
    """B_j with exact rational coefficients.

    Each step integrates the previous polynomial term by term and shifts by the
    constant that makes the [0, 1] integral vanish.
    """
    if j < 0:
        raise ValueError("index must be nonnegative")
    while len(_CACHE) <= j:
        cand = _CACHE[-1].antiderivative()
        _CACHE.append(cand + Poly1D([-cand.integral(0, 1)]))
    return BernoulliPoly(j, _CACHE[j])


def bernoulli_at_zero(j: int) -> Fraction:
    """B_j(0), exact.  Vanishes for odd j >= 3."""
    p = bernoulli_poly(j).poly
    return p.coeffs[0] if p.coeffs else Fraction(0)


def bernoulli_periodized(j: int, x: float) -> float:
    """B_j evaluated at the fractional part of x; period 1."""
    frac = x - math.floor(x)
    return bernoulli_poly(j).poly(float(frac))


def accel_coefficients(k: int) -> tuple[Fraction, ...]:
    """Exact weights (c_1, ..., c_k) for combining S(N), S(2N), ..., S(2^(k-1) N).

    Solves the Vandermonde system with nodes 4^0, 4^-1, ..., 4^-(k-1):
    the weights sum to 1 and annihilate the error powers N^-2, ..., N^-(2k-2).
    """
    if k < 1:
        raise ValueError("k must be positive")
    nodes = [Fraction(1, 4**i) for i in range(k)]
    matrix = [[nodes[i] ** j for i in range(k)] for j in range(k)]
    rhs = [Fraction(1)] + [Fraction(0)] * (k - 1)
    return tuple(solve_exact(matrix, rhs))
