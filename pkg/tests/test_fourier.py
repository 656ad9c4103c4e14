"""Oscillatory-integral expansions, simplex transforms, and the Poisson check."""

import cmath
import math
from fractions import Fraction

import pytest

from polyquad import (AnalyticFunction2D, DiagonalFrequency, FrequencyTooLarge,
                      IntPolygon, NonPolynomialIntegrand, PolynomialFunction1D,
                      ZeroFrequency, affine_pullback, axis_expansion,
                      diagonal_expansion, ft_polygon_polynomial,
                      ft_simplex_polynomial, ft_triangle_numeric,
                      leading_offdiagonal_check, lemma1_expand,
                      poisson_check, polynomial_from_monomials)
from polyquad.fourier import DegenerateTriangle
from polyquad.polynomials import Poly1D, Poly2D

TWO_PI_I = 2j * math.pi


# -- one-dimensional expansion --------------------------------------------------


def test_lemma1_constant_vanishing_integral():
    g = PolynomialFunction1D(Poly1D([1]))
    e = lemma1_expand(g, 0.0, 1.0, 1.0, 0)
    assert abs(e.terms[0][1]) < 1e-15
    assert abs(e.total) < 1e-14  # integral of e^(-2 pi i x) over [0,1] is 0


def test_lemma1_linear_against_antiderivative_oracle():
    # by parts: integral of x e^(-2 pi i x y) over [0,1] at integer y equals
    # -1/(2 pi i y)
    g = PolynomialFunction1D(Poly1D([0, 1]))
    for y in (1.0, 2.0, -3.0):
        e = lemma1_expand(g, 0.0, 1.0, y, 1)
        assert abs(e.total - (-1 / (TWO_PI_I * y))) < 1e-12


def test_lemma1_total_independent_of_w():
    g = PolynomialFunction1D(Poly1D([2, -1, 0, 3]))
    totals = [lemma1_expand(g, 0.0, 1.0, 2.0, w).total for w in (0, 1, 2, 3)]
    for t in totals[1:]:
        assert abs(t - totals[0]) < 1e-10


def test_lemma1_noninteger_endpoints_and_frequency():
    g = PolynomialFunction1D(Poly1D([0, 0, 1]))
    e = lemma1_expand(g, 0.5, 2.0, 0.7, 2)
    # direct oracle via fine rectangle-free quadrature of the analytic pieces
    import numpy as np
    xs, w = np.polynomial.legendre.leggauss(64)
    xs = 0.5 + (xs + 1) / 2 * 1.5
    wts = w / 2 * 1.5
    direct = np.sum(wts * xs**2 * np.exp(-TWO_PI_I * 0.7 * xs))
    assert abs(e.total - direct) < 1e-12


def test_lemma1_zero_frequency_rejected():
    g = PolynomialFunction1D(Poly1D([1]))
    with pytest.raises(ZeroFrequency):
        lemma1_expand(g, 0.0, 1.0, 0.0, 1)


# -- affine pullback ----------------------------------------------------------------


def test_pullback_standard_simplex(standard_simplex):
    m = affine_pullback(standard_simplex, 5, -3)
    assert (m.p, m.q, m.a, m.b, m.c, m.d) == (0, 0, 1, 0, 0, 1)
    assert m.jacobian == 1
    assert m.phase_freq == 0
    assert m.pulled_frequencies(5, -3) == (5, -3)


def test_pullback_translated_simplex():
    tri = IntPolygon([(1, 1), (2, 1), (1, 2)])
    m = affine_pullback(tri, 1, 0)
    assert m.jacobian == 1
    assert m.phase_freq == 1


def test_pullback_appendix_jacobian(appendix_triangle):
    m = affine_pullback(appendix_triangle, 1, 1)
    assert m.jacobian == 3  # |2*2 - 1*1|


def test_pullback_requires_triangle(unit_square):
    with pytest.raises(DegenerateTriangle):
        affine_pullback(unit_square, 1, 0)


# -- numeric transform oracle -----------------------------------------------------


def test_ft_constant_zero_frequency(standard_simplex, g_one):
    assert ft_triangle_numeric(g_one, standard_simplex, 0, 0) \
        == pytest.approx(0.5, abs=1e-12)


def test_ft_constant_unit_frequency(standard_simplex, g_one):
    # integral of (1-x) e^(-2 pi i x) over [0,1] = -i/(2 pi)
    want = -1j / (2 * math.pi)
    assert abs(ft_triangle_numeric(g_one, standard_simplex, 1, 0) - want) < 1e-10


def test_ft_hermitian_symmetry(standard_simplex, g_x2y3):
    for (m, n) in [(1, 0), (2, 3), (-1, 4)]:
        a = ft_triangle_numeric(g_x2y3, standard_simplex, m, n)
        b = ft_triangle_numeric(g_x2y3, standard_simplex, -m, -n)
        assert abs(a - b.conjugate()) < 1e-12


def test_ft_frequency_cap(standard_simplex, g_one):
    with pytest.raises(FrequencyTooLarge):
        ft_triangle_numeric(g_one, standard_simplex, 65, 0)


def test_ft_exact_matches_quadrature(standard_simplex):
    g = polynomial_from_monomials([[1, 1, 2, 3], [1, 2, 1, 0], [3, 1, 0, 0]])
    for (m, n) in [(0, 0), (1, 0), (0, 1), (2, 2), (3, -1), (-5, 7), (8, 8)]:
        exact = ft_simplex_polynomial(g.poly, m, n)
        quad = ft_triangle_numeric(g, standard_simplex, m, n)
        assert abs(exact - quad) < 1e-11, (m, n)


def test_ft_polygon_additivity(unit_square, g_x2y3):
    # split the square along each diagonal: the transforms must agree
    parts_a = [IntPolygon([(0, 0), (1, 0), (1, 1)]),
               IntPolygon([(0, 0), (1, 1), (0, 1)])]
    parts_b = [IntPolygon([(0, 0), (1, 0), (0, 1)]),
               IntPolygon([(1, 0), (1, 1), (0, 1)])]
    for (m, n) in [(1, 0), (2, 1), (3, 3)]:
        va = sum(ft_triangle_numeric(g_x2y3, t, m, n) for t in parts_a)
        vb = sum(ft_triangle_numeric(g_x2y3, t, m, n) for t in parts_b)
        assert abs(va - vb) < 1e-9
        assert abs(va - ft_polygon_polynomial(g_x2y3, unit_square, m, n)) < 1e-9


def test_ft_polygon_exact_separable(unit_square):
    # over the unit square the transform factorizes; oracle from 1-D moments
    g = polynomial_from_monomials([[1, 1, 1, 1]])
    got = ft_polygon_polynomial(g, unit_square, 2, 3)
    one_d = lambda p, lam: complex(  # noqa: E731
        sum((-1) ** r * math.factorial(p) / math.factorial(p - r)
            * (-TWO_PI_I * lam) ** (-(r + 1)) for r in range(p + 1))
        - (-1) ** p * math.factorial(p) * (-TWO_PI_I * lam) ** (-(p + 1)))
    assert abs(got - one_d(1, 2) * one_d(1, 3)) < 1e-14


# -- simplex expansions vs the oracle -------------------------------------------------


GS = [
    polynomial_from_monomials([[1, 1, 0, 0]]),
    polynomial_from_monomials([[1, 1, 1, 0]]),
    polynomial_from_monomials([[1, 1, 0, 1]]),
    polynomial_from_monomials([[1, 1, 2, 3]]),
    polynomial_from_monomials([[1, 1, 1, 1], [-1, 2, 2, 0]]),
]


@pytest.mark.parametrize("gi", range(len(GS)))
@pytest.mark.parametrize("n", range(1, 9))
def test_diagonal_expansion_matches_oracle(standard_simplex, gi, n):
    g = GS[gi]
    total = diagonal_expansion(g, n, 4).total
    direct = ft_triangle_numeric(g, standard_simplex, n, n)
    assert abs(total - direct) < 1e-9


def test_diagonal_expansion_constant_leading_term():
    e = diagonal_expansion(GS[0], 3, 1)
    assert abs(e.terms[0][1] - (-1 / (TWO_PI_I * 3))) < 1e-15
    assert abs(e.remainder) < 1e-15  # G(t) = t has vanishing second derivative


@pytest.mark.parametrize("gi", range(len(GS)))
@pytest.mark.parametrize("axis", ["x", "y"])
@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_axis_expansion_matches_oracle(standard_simplex, gi, axis, n):
    g = GS[gi]
    total = axis_expansion(g, axis, n, 4).total
    freq = (n, 0) if axis == "x" else (0, n)
    direct = ft_triangle_numeric(g, standard_simplex, *freq)
    assert abs(total - direct) < 1e-9


def test_remainder_shrinks_with_order(g_x2y3):
    rems = [abs(diagonal_expansion(g_x2y3, 4, w).remainder) for w in (1, 2, 3)]
    assert rems[1] <= rems[0]
    assert rems[2] <= rems[1]


def test_expansion_errors(g_x2y3, g_expxy):
    with pytest.raises(ZeroFrequency):
        diagonal_expansion(g_x2y3, 0, 1)
    with pytest.raises(NonPolynomialIntegrand):
        diagonal_expansion(g_expxy, 1, 1)
    with pytest.raises(ValueError):
        axis_expansion(g_x2y3, "z", 1, 1)


# -- off-diagonal leading order ---------------------------------------------------------


def _offdiag_grid():
    vals = [v for v in range(-6, 7) if v != 0]
    return [(m, n) for m in vals for n in vals if m != n]


@pytest.mark.parametrize("g", [GS[0], GS[3]])
def test_leading_offdiagonal_bounded(g):
    scan = [leading_offdiagonal_check(g, m, n) for m, n in _offdiag_grid()]
    assert max(scan) < 1.0


def test_leading_offdiagonal_zero_integrand():
    g = polynomial_from_monomials([[0, 1, 0, 0]])
    assert leading_offdiagonal_check(g, 2, 5) == pytest.approx(0.0, abs=1e-12)


def test_leading_offdiagonal_errors(g_x2y3):
    with pytest.raises(DiagonalFrequency):
        leading_offdiagonal_check(g_x2y3, 3, 3)
    with pytest.raises(ZeroFrequency):
        leading_offdiagonal_check(g_x2y3, 0, 2)


# -- Poisson summation ---------------------------------------------------------------


def test_poisson_check_small(appendix_triangle, g_x2y3):
    res = poisson_check(g_x2y3, appendix_triangle, 2, eps=0.05, max_freq=48)
    assert res["residual"] < 1e-4
    # the raw anchor tracks at mollifier-scale accuracy only
    assert res["residual_at_eps"] < 0.1


def test_poisson_check_rejects_analytic(appendix_triangle, g_expxy):
    with pytest.raises(NonPolynomialIntegrand):
        poisson_check(g_expxy, appendix_triangle, 2)
