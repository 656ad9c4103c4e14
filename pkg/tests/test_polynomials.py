"""Exact polynomial plumbing: partials, affine composition, simplex moments."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyquad.polynomials import (Poly1D, Poly2D, diagonal_slice,
                                  inner_integral_along_x,
                                  inner_integral_along_y, poly2d_partial,
                                  unit_simplex_integral)

X2Y3 = Poly2D([(Fraction(1), 2, 3)])


def test_partial_examples():
    assert poly2d_partial(X2Y3, 1, 0) == Poly2D([(Fraction(2), 1, 3)])
    assert poly2d_partial(Poly2D([(Fraction(1), 0, 0)]), 1, 0) == Poly2D([])
    assert poly2d_partial(X2Y3, 2, 3) == Poly2D([(Fraction(12), 0, 0)])


def test_poly1d_basics():
    p = Poly1D([1, 0, 3])  # 1 + 3x^2
    assert p.degree == 2
    assert p(Fraction(1, 2)) == Fraction(7, 4)
    assert p.derivative() == Poly1D([0, 6])
    assert p.integral(0, 1) == 2
    assert (p * Poly1D([0, 1]))(2) == 2 * p(2)
    assert Poly1D([1, 2]) + Poly1D([0, -2]) == Poly1D([1])


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-4, 4), st.integers(-4, 4))
def test_compose_affine_matches_pointwise(p, q, a, b, c, d, s, t):
    g = Poly2D([(Fraction(1), 2, 3), (Fraction(-2, 3), 1, 1), (Fraction(5), 0, 2)])
    composed = g.compose_affine(p, q, a, b, c, d)
    lhs = composed(Fraction(s), Fraction(t))
    rhs = g(Fraction(p + a * s + c * t), Fraction(q + b * s + d * t))
    assert lhs == rhs


def _gauss_01(n=32):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


@pytest.mark.parametrize("x0", [0.0, 0.25, 0.7])
def test_inner_integral_along_y_matches_quadrature(x0):
    g = Poly2D([(Fraction(1), 2, 3), (Fraction(2), 0, 1), (Fraction(-1), 1, 0)])
    inner = inner_integral_along_y(g)
    nodes, weights = _gauss_01()
    upper = 1.0 - x0
    ys = upper * nodes
    direct = upper * np.sum(weights * np.array([g(x0, y) for y in ys]))
    assert inner(x0) == pytest.approx(direct, abs=1e-13)


def test_inner_integral_along_x_by_symmetry():
    g = Poly2D([(Fraction(1), 2, 3)])
    swapped = Poly2D([(Fraction(1), 3, 2)])
    assert inner_integral_along_x(g) == inner_integral_along_y(swapped)


@pytest.mark.parametrize("t0", [0.3, 0.75, 1.0])
def test_diagonal_slice_matches_quadrature(t0):
    g = Poly2D([(Fraction(1), 2, 3), (Fraction(1, 2), 1, 0)])
    G = diagonal_slice(g)
    nodes, weights = _gauss_01()
    ss = t0 * nodes
    direct = t0 * np.sum(weights * np.array([g(s, t0 - s) for s in ss]))
    assert G(t0) == pytest.approx(direct, abs=1e-13)


def test_diagonal_slice_known_cases():
    assert diagonal_slice(Poly2D([(Fraction(1), 0, 0)])) == Poly1D([0, 1])
    assert diagonal_slice(Poly2D([(Fraction(1), 1, 0)])) == Poly1D([0, 0, Fraction(1, 2)])
    assert diagonal_slice(Poly2D([])) == Poly1D([])


def test_unit_simplex_monomial_formula():
    assert unit_simplex_integral(Poly2D([(Fraction(1), 0, 0)])) == Fraction(1, 2)
    assert unit_simplex_integral(Poly2D([(Fraction(1), 1, 0)])) == Fraction(1, 6)
    # oracle: nested quadrature of s^2 t^3 over the simplex
    nodes, weights = _gauss_01(48)
    total = 0.0
    for s, ws in zip(nodes, weights):
        upper = 1.0 - s
        total += ws * upper * np.sum(weights * (s**2 * (upper * nodes) ** 3))
    assert float(unit_simplex_integral(X2Y3)) == pytest.approx(total, abs=1e-14)


def test_homogeneity_detection():
    assert Poly2D([(Fraction(1), 2, 3), (Fraction(2), 0, 5)]).is_homogeneous()
    assert not Poly2D([(Fraction(1), 2, 3), (Fraction(2), 0, 4)]).is_homogeneous()
    assert Poly2D([]).is_homogeneous()


def test_zero_coefficients_dropped():
    p = Poly2D([(Fraction(1), 1, 1), (Fraction(-1), 1, 1)])
    assert p.monomials == {}
    assert Poly1D([Fraction(0), Fraction(0)]).coeffs == ()
