"""Shared numeric helpers: exact linear solves, extrapolation, quadrature nodes."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np


class InsufficientSamples(ValueError):
    """Too few samples to determine the requested expansion coefficients."""


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square rational system by Gaussian elimination with partial pivoting.

    Raises ValueError if the matrix is singular.
    """
    n = len(rhs)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def neville_to_zero(xs: list[float], ys: list[float]) -> float:
    """Polynomial extrapolation of the samples (x_i, y_i) to x = 0."""
    t = list(ys)
    n = len(t)
    for k in range(1, n):
        for i in range(n - k):
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * xs[i + k] / (xs[i] - xs[i + k])
    return t[0]


@lru_cache(maxsize=None)
def gauss_legendre_01(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights transplanted to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=None)
def duffy_simplex_rule(order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor rule for the unit simplex {s, t >= 0, s + t <= 1}.

    Built from the collapsed square s = u, t = (1 - u) v with Jacobian (1 - u);
    exactness matches the underlying 1-D Gauss rule along each direction.
    """
    u, wu = gauss_legendre_01(order)
    v, wv = gauss_legendre_01(order)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    ss = uu
    tt = (1.0 - uu) * vv
    ww = np.outer(wu, wv) * (1.0 - uu)
    return ss.ravel(), tt.ravel(), ww.ravel()


def simplex_cells(k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Origins and edge vectors of the k^2 cells of the uniform simplex refinement.

    Each cell is origin + s*e1 + t*e2 for (s, t) in the unit simplex; down-pointing
    cells use negated edges so a single reference rule serves all cells.
    """
    origins = []
    e1 = []
    e2 = []
    h = 1.0 / k
    for i in range(k):
        for j in range(k - i):
            origins.append((i * h, j * h))
            e1.append((h, 0.0))
            e2.append((0.0, h))
        for j in range(k - i - 1):
            origins.append(((i + 1) * h, (j + 1) * h))
            e1.append((-h, 0.0))
            e2.append((0.0, -h))
    return np.array(origins), np.array(e1), np.array(e2)
