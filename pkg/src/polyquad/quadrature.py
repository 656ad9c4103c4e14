"""Weighted and unweighted lattice sums over integer polygons, their accelerated
combinations, exact polynomial integration, and the one-dimensional
Euler-Maclaurin identity.

The weighted Riemann sum S(N) samples g on the lattice (1/N)Z^2 with the
polygon's solid-angle weights; its error expansion contains only even powers
of 1/N, which the ratio-2 acceleration weights exploit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .bernoulli import accel_coefficients, bernoulli_at_zero, bernoulli_poly
from .functions import Function1D, Function2D, PolynomialFunction2D
from .geometry import IntPolygon, SolidAngle, lattice_point_arrays
from .polynomials import Poly2D, unit_simplex_integral
from .util import (InsufficientSamples, gauss_legendre_01, duffy_simplex_rule,
                   simplex_cells, solve_exact)


@dataclass(frozen=True)
class WeightedSum:
    """Value of a lattice quadrature rule plus bookkeeping.

    `exact` is present whenever every contributing weight is exact rational
    (then `value == float(exact)` bit for bit); counts tallies the sampled
    lattice points per class (interior, edge-interior, vertex).
    """

    value: float
    exact: Fraction | None
    N: int
    counts: tuple[int, int, int]


@dataclass(frozen=True)
class EM1DReport:
    """Pieces of the one-dimensional Euler-Maclaurin identity at (N, w):
    trapezoid_sum = integral + sum(corrections) + remainder_estimate."""

    trapezoid_sum: float
    corrections: tuple[tuple[int, float], ...]
    remainder_estimate: float
    N: int
    w: int

    @property
    def correction_total(self) -> float:
        return sum(v for _, v in self.corrections)


def _as_poly(g) -> Poly2D:
    if isinstance(g, PolynomialFunction2D):
        return g.poly
    if isinstance(g, Poly2D):
        return g
    raise TypeError("polynomial integrand required")


def _as_function(g) -> Function2D:
    if isinstance(g, Poly2D):
        return PolynomialFunction2D(g)
    return g


_CHUNK_LIMIT = 1 << 62


def _int_power_sum(xs, ys, a: int, b: int) -> int:
    """Exact sum of x^a y^b over paired coordinate arrays (arbitrary precision)."""
    n = len(xs)
    if n == 0:
        return 0
    if xs.dtype == object:
        return sum(int(x) ** a * int(y) ** b for x, y in zip(xs, ys))
    mx = max(1, int(np.max(np.abs(xs)))) ** a
    my = max(1, int(np.max(np.abs(ys)))) ** b
    bound = mx * my
    if bound >= _CHUNK_LIMIT:
        return sum(int(x) ** a * int(y) ** b for x, y in zip(xs, ys))
    chunk = max(1, _CHUNK_LIMIT // max(bound, 1))
    total = 0
    for start in range(0, n, chunk):
        sl = slice(start, start + chunk)
        vals = xs[sl] ** a * ys[sl] ** b if (a or b) else np.ones(len(xs[sl]), dtype=np.int64)
        total += int(np.sum(vals))
    return total


def _exact_point_sum(poly: Poly2D, xs, ys, scale: int) -> Fraction:
    """Exact sum of g(x/scale, y/scale) over the points."""
    total = Fraction(0)
    for c, a, b in poly.terms():
        total += c * Fraction(_int_power_sum(xs, ys, a, b), scale ** (a + b))
    return total


def _float_point_sum(g: Function2D, xs, ys, scale: int) -> float:
    """Pairwise float sum of g(x/scale, y/scale) over the points."""
    if len(xs) == 0:
        return 0.0
    fx = xs.astype(np.float64) / scale
    fy = ys.astype(np.float64) / scale
    try:
        vals = g(fx, fy)
        vals = np.broadcast_to(np.asarray(vals, dtype=np.float64), fx.shape)
    except (TypeError, ValueError):
        vals = np.array([g(float(x), float(y)) for x, y in zip(fx, fy)])
    return float(np.sum(vals))


def weighted_sum(g, polygon: IntPolygon, N: int) -> WeightedSum:
    """S(N): the solid-angle-weighted Riemann sum of g over the lattice (1/N)Z^2.

    For polynomial g the exact value is carried whenever every vertex weight is
    an exact multiple of 1/8 or g vanishes at that vertex.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    g = _as_function(g)
    ix, iy, ex, ey, vertex_entries = lattice_point_arrays(polygon, N)
    counts = (len(ix), len(ex), len(vertex_entries))
    angles = [polygon.vertex_angle(i) for _, i in vertex_entries]
    nsq = N * N
    if g.is_polynomial:
        poly = g.poly
        g_vertex = [poly(Fraction(vx, N), Fraction(vy, N))
                    for (vx, vy), _ in vertex_entries]
        if all(w.exact is not None or gv == 0 for w, gv in zip(angles, g_vertex)):
            exact = _exact_point_sum(poly, ix, iy, N)
            exact += Fraction(1, 2) * _exact_point_sum(poly, ex, ey, N)
            exact += sum((w.exact * gv for w, gv in zip(angles, g_vertex) if gv != 0),
                         Fraction(0))
            exact /= nsq
            return WeightedSum(float(exact), exact, N, counts)
        base = _exact_point_sum(poly, ix, iy, N) + \
            Fraction(1, 2) * _exact_point_sum(poly, ex, ey, N)
        value = float(base) + sum(w.value * float(gv)
                                  for w, gv in zip(angles, g_vertex))
        return WeightedSum(value / nsq, None, N, counts)
    total = _float_point_sum(g, ix, iy, N)
    total += 0.5 * _float_point_sum(g, ex, ey, N)
    total += sum(w.value * float(g(vx / N, vy / N))
                 for w, ((vx, vy), _) in zip(angles, vertex_entries))
    return WeightedSum(total / nsq, None, N, counts)


def unweighted_sum(g, polygon: IntPolygon, N: int,
                   mode: Literal["open", "closed"]) -> float:
    """Plain Riemann sum: closed counts every lattice point of the closure at
    weight one, open counts interior points only."""
    if mode not in ("open", "closed"):
        raise ValueError("mode must be 'open' or 'closed'")
    g = _as_function(g)
    ix, iy, ex, ey, vertex_entries = lattice_point_arrays(polygon, N)
    total = _float_point_sum(g, ix, iy, N)
    if mode == "closed":
        total += _float_point_sum(g, ex, ey, N)
        total += sum(float(g(vx / N, vy / N)) for (vx, vy), _ in vertex_entries)
    return total / (N * N)


def trapezoid_analog(g, polygon: IntPolygon, N: int) -> WeightedSum:
    """Two-dimensional trapezoid rule: interior points at 1/N^2, every boundary
    lattice point (vertices included) at 1/(2N^2)."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    g = _as_function(g)
    ix, iy, ex, ey, vertex_entries = lattice_point_arrays(polygon, N)
    counts = (len(ix), len(ex), len(vertex_entries))
    nsq = N * N
    if g.is_polynomial:
        poly = g.poly
        exact = _exact_point_sum(poly, ix, iy, N)
        boundary = _exact_point_sum(poly, ex, ey, N)
        boundary += sum((poly(Fraction(vx, N), Fraction(vy, N))
                         for (vx, vy), _ in vertex_entries), Fraction(0))
        exact += Fraction(1, 2) * boundary
        exact /= nsq
        return WeightedSum(float(exact), exact, N, counts)
    total = _float_point_sum(g, ix, iy, N)
    total += 0.5 * (_float_point_sum(g, ex, ey, N)
                    + sum(float(g(vx / N, vy / N)) for (vx, vy), _ in vertex_entries))
    return WeightedSum(total / nsq, None, N, counts)


def accelerate(g, polygon: IntPolygon, N: int, k: int) -> float:
    """Ratio-2 convergence acceleration: sum of c_i * S(2^(i-1) N) with the
    exact Vandermonde weights; error order improves from N^-2 to N^-2k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    coeffs = accel_coefficients(k)
    sums = [weighted_sum(g, polygon, N * 2**i) for i in range(k)]
    if all(s.exact is not None for s in sums):
        return float(sum((c * s.exact for c, s in zip(coeffs, sums)), Fraction(0)))
    return sum(float(c) * s.value for c, s in zip(coeffs, sums))


def collected_accelerated_sum(g, polygon: IntPolygon, N: int) -> WeightedSum:
    """The k=2 acceleration collected on the refined lattice: g summed over the
    points of (2N)^-1 Z^2 \\ N^-1 Z^2 at weight 1/(3N^2) inside the polygon and
    1/(6N^2) on its boundary.  Polygon vertices never appear, so the value is
    exact rational for polynomial g."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    g = _as_function(g)
    ix, iy, ex, ey, _ = lattice_point_arrays(polygon, 2 * N)
    odd_i = (ix % 2 != 0) | (iy % 2 != 0)
    odd_e = (ex % 2 != 0) | (ey % 2 != 0)
    ix, iy = ix[odd_i], iy[odd_i]
    ex, ey = ex[odd_e], ey[odd_e]
    counts = (len(ix), len(ex), 0)
    nsq = N * N
    if g.is_polynomial:
        poly = g.poly
        exact = (Fraction(1, 3) * _exact_point_sum(poly, ix, iy, 2 * N)
                 + Fraction(1, 6) * _exact_point_sum(poly, ex, ey, 2 * N)) / nsq
        return WeightedSum(float(exact), exact, N, counts)
    total = (_float_point_sum(g, ix, iy, 2 * N) / 3.0
             + _float_point_sum(g, ex, ey, 2 * N) / 6.0)
    return WeightedSum(total / nsq, None, N, counts)


# -- exact and numeric reference integrals -------------------------------------


def integrate_polynomial_exact(g, polygon: IntPolygon) -> Fraction:
    """Exact integral of a polynomial over the polygon.

    Triangulates, pulls each triangle back to the standard simplex by the
    affine map fixed by its vertices, and applies the factorial monomial rule.
    """
    poly = _as_poly(g)
    total = Fraction(0)
    for tri in polygon.triangulate():
        (px, py), (ax, ay), (bx, by) = tri.vertices
        a, b = ax - px, ay - py
        c, d = bx - px, by - py
        det = a * d - b * c  # positive: triangles come out counterclockwise
        pulled = poly.compose_affine(px, py, a, b, c, d)
        total += det * unit_simplex_integral(pulled)
    return total


def integrate_numeric(g, polygon: IntPolygon, subdiv: int = 12, order: int = 10) -> float:
    """Reference integral of a smooth integrand by per-triangle tensor quadrature."""
    g = _as_function(g)
    s_ref, t_ref, w_ref = duffy_simplex_rule(order)
    origins, e1, e2 = simplex_cells(subdiv)
    ss = origins[:, 0, None] + e1[:, 0, None] * s_ref + e2[:, 0, None] * t_ref
    tt = origins[:, 1, None] + e1[:, 1, None] * s_ref + e2[:, 1, None] * t_ref
    total = 0.0
    for tri in polygon.triangulate():
        (px, py), (ax, ay), (bx, by) = tri.vertices
        a, b = ax - px, ay - py
        c, d = bx - px, by - py
        det = a * d - b * c
        x = px + a * ss + c * tt
        y = py + b * ss + d * tt
        total += det * float(np.sum(g(x, y) * w_ref)) / subdiv**2
    return total


# -- expansion exactness ---------------------------------------------------------


def polynomial_expansion_residual(g, polygon: IntPolygon, w: int,
                                  sample_Ns: list[int]) -> float:
    """Held-out residual of the finite even-power expansion of S(N).

    Fits S(N) = a0 + sum_j delta(j) / N^(2j) on the first w+1 samples (exactly
    when the sums are exact) and returns the largest |prediction - S(N)| over
    the remaining samples.  For homogeneous g of degree alpha with
    w > (alpha - 1)/2 the expansion is exact, so the residual vanishes.
    """
    poly = _as_poly(g)
    if not poly.is_homogeneous():
        raise ValueError("integrand must be a homogeneous polynomial")
    alpha = poly.total_degree
    if not w > (alpha - 1) / 2:
        raise ValueError(f"w must exceed (alpha-1)/2 = {(alpha - 1) / 2}")
    if len(sample_Ns) < w + 2:
        raise InsufficientSamples(
            f"need at least {w + 2} samples for w={w}, got {len(sample_Ns)}")
    sums = [weighted_sum(poly, polygon, N) for N in sample_Ns]
    fit_Ns = sample_Ns[:w + 1]
    fit_vals = sums[:w + 1]
    if all(s.exact is not None for s in sums):
        matrix = [[Fraction(1, N ** (2 * j)) for j in range(w + 1)] for N in fit_Ns]
        params = solve_exact(matrix, [s.exact for s in fit_vals])

        def predict(N):
            return sum((p * Fraction(1, N ** (2 * j)) for j, p in enumerate(params)),
                       Fraction(0))

        residual = max((abs(predict(N) - s.exact)
                        for N, s in zip(sample_Ns[w + 1:], sums[w + 1:])),
                       default=Fraction(0))
        return float(residual)
    a = np.array([[N ** (-2.0 * j) for j in range(w + 1)] for N in fit_Ns])
    params = np.linalg.solve(a, np.array([s.value for s in fit_vals]))
    residual = 0.0
    for N, s in zip(sample_Ns[w + 1:], sums[w + 1:]):
        pred = float(sum(p * N ** (-2.0 * j) for j, p in enumerate(params)))
        residual = max(residual, abs(pred - s.value))
    return residual


# -- one-dimensional Euler-Maclaurin ----------------------------------------------


def em1d(g: Function1D, a: int, b: int, N: int, w: int) -> EM1DReport:
    """Euler-Maclaurin split of the 1-D trapezoid sum on [a, b] with step 1/N.

    trapezoid = integral + sum over odd j <= w of N^(-j-1) B_{j+1}(0)
    (g^(j)(b) - g^(j)(a)) + (-1)^w N^(-w-1) * integral of the periodized
    B_{w+1} against g^(w+1), the last integral evaluated by Gauss-Legendre on
    each lattice subinterval.
    """
    if not (isinstance(a, int) and isinstance(b, int) and a < b):
        raise ValueError("endpoints must be integers with a < b")
    if N < 1 or w < 0:
        raise ValueError("need N >= 1 and w >= 0")
    total = 0.5 * float(g(a)) + 0.5 * float(g(b))
    total += float(np.sum(np.array([float(g(n / N))
                                    for n in range(N * a + 1, N * b)])))
    trapezoid = total / N
    corrections = []
    for j in range(1, w + 1, 2):
        coeff = float(bernoulli_at_zero(j + 1))
        term = coeff * (float(g.derivative(j, b)) - float(g.derivative(j, a))) \
            / N ** (j + 1)
        corrections.append((j, term))
    nodes, weights = gauss_legendre_01(10)
    bvals = np.array([bernoulli_poly(w + 1).poly(float(u)) for u in nodes])
    acc = 0.0
    for m in range(N * a, N * b):
        xs = (m + nodes) / N
        gw = np.array([float(g.derivative(w + 1, x)) for x in xs])
        acc += float(np.sum(weights * bvals * gw)) / N
    remainder = (-1) ** w * acc / N ** (w + 1)
    return EM1DReport(trapezoid, tuple(corrections), remainder, N, w)


def trapezoid_1d(g: Function1D, a: int, b: int, N: int) -> float:
    """Composite 1-D trapezoid value (1/N)(g(a)/2 + sum g(n/N) + g(b)/2)."""
    total = 0.5 * float(g(a)) + 0.5 * float(g(b))
    total += float(np.sum(np.array([float(g(n / N))
                                    for n in range(N * a + 1, N * b)])))
    return total / N
