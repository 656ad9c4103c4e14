"""Solid-angle weighted lattice quadrature over integer polygons.

Weighted Riemann sums on refining integer lattices approximate polygon
integrals with an error expansion in even powers of the refinement, which
makes exact rational bookkeeping, Richardson-type acceleration, and
closed-form Bernoulli lattice sums all fit together; this package implements
the whole toolchain plus the Fourier-side validators behind it.
"""

from .bernoulli import (BernoulliPoly, accel_coefficients, bernoulli_at_zero,
                        bernoulli_periodized, bernoulli_poly)
from .functions import (BUILTIN_INTEGRANDS, AnalyticFunction1D,
                        AnalyticFunction2D, DerivativeOrderExceeded,
                        Function1D, Function2D, PolynomialFunction1D,
                        PolynomialFunction2D, function_from_json,
                        polynomial_from_monomials)
from .geometry import (CollinearTriple, DuplicateConsecutive, IntPolygon,
                       PointClass, PolygonError, SelfIntersecting, SolidAngle,
                       TooFewVertices, classify_scaled_point,
                       lattice_point_classes, solid_angle)
from .lattice_sums import (CutoffTooSmall, DegenerateDirections, DeltaFit,
                           NonCoprime, SumSpec, closed_form, double_sum,
                           fit_delta, line_sum, line_sum_two_factor,
                           mollified_limit, mollified_sum,
                           parallelogram_lattice, parallelogram_region)
from .fourier import (AffineMapData, DiagonalFrequency, Expansion1D,
                      FrequencyTooLarge, NonPolynomialIntegrand, ZeroFrequency,
                      affine_pullback, axis_expansion, diagonal_expansion,
                      ft_polygon_polynomial, ft_simplex_polynomial,
                      ft_triangle_numeric, leading_offdiagonal_check,
                      lemma1_expand, poisson_check)
from .polynomials import (Poly1D, Poly2D, diagonal_slice,
                          inner_integral_along_x, inner_integral_along_y,
                          poly2d_partial, unit_simplex_integral)
from .quadrature import (EM1DReport, WeightedSum, accelerate,
                         collected_accelerated_sum, em1d,
                         integrate_numeric, integrate_polynomial_exact,
                         polynomial_expansion_residual, trapezoid_1d,
                         trapezoid_analog, unweighted_sum, weighted_sum)
from .util import InsufficientSamples

__version__ = "0.1.0"
