"""Closed-form Bernoulli lattice sums along lines and over the plane, their
mollified-series numerical oracle, and empirical recovery of the even-power
expansion coefficients of weighted lattice sums.

The closed forms evaluate regularized sums of 1/((am+bn)^(h+1) (cm+dn)^(k+1))
over lattice lines or over the full lattice; the oracle sums the same series
directly under a Gaussian multiplier exp(-pi eps^2 |n|^2) and extrapolates the
scale eps to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bernoulli import bernoulli_at_zero, bernoulli_poly
from .geometry import IntPolygon, SolidAngle
from .util import InsufficientSamples, neville_to_zero, solve_exact


class DegenerateDirections(ValueError):
    """Direction pairs that make the requested lattice sum ill-defined."""


class NonCoprime(ValueError):
    """A direction pair that the operation requires to be coprime is not."""


class CutoffTooSmall(ValueError):
    """Truncation radius leaves a Gaussian tail above the 1e-12 threshold."""


# Largest eps*cutoff product with exp(-pi (eps*cutoff)^2) < 1e-12.
_TAIL_FACTOR = math.sqrt(12 * math.log(10) / math.pi)


def _require_coprime(x: int, y: int, label: str) -> None:
    if math.gcd(abs(x), abs(y)) != 1:
        raise NonCoprime(f"{label} = ({x}, {y}) must be coprime")


def line_sum(a: int, b: int, c: int, d: int, h: int) -> float:
    """Regularized sum of (am+bn)^-(h+1) over the lattice points of cm+dn=0.

    Zero for even h; for odd h the value is
    (-1)^((h-1)/2) (2 pi)^(h+1) B_{h+1}(0) (ad-bc)^-(h+1).
    """
    _require_coprime(c, d, "(c, d)")
    det = a * d - b * c
    if det == 0:
        raise DegenerateDirections("ad - bc must be nonzero")
    if h % 2 == 0:
        return 0.0
    rational = Fraction((-1) ** ((h - 1) // 2)) * bernoulli_at_zero(h + 1) \
        / Fraction(det) ** (h + 1)
    return float(rational) * (2 * math.pi) ** (h + 1)


def line_sum_two_factor(a: int, b: int, c: int, d: int, e: int, f: int,
                        h: int, k: int) -> float:
    """Regularized sum of (am+bn)^-(h+1) (cm+dn)^-(k+1) along the line em+fn=0.

    Zero for odd h+k; otherwise
    (-1)^((h+k)/2) (2 pi)^(h+k+2) B_{h+k+2}(0) / ((af-be)^(h+1) (cf-de)^(k+1)).
    """
    _require_coprime(e, f, "(e, f)")
    d1 = a * f - b * e
    d2 = c * f - d * e
    if d1 == 0 or d2 == 0:
        raise DegenerateDirections("af - be and cf - de must both be nonzero")
    if (h + k) % 2 == 1:
        return 0.0
    rational = Fraction((-1) ** ((h + k) // 2)) * bernoulli_at_zero(h + k + 2) \
        / (Fraction(d1) ** (h + 1) * Fraction(d2) ** (k + 1))
    return float(rational) * (2 * math.pi) ** (h + k + 2)


def parallelogram_region(a: int, b: int, c: int, d: int) -> IntPolygon:
    """The closed parallelogram spanned by (a, b) and (c, d) from the origin."""
    if a * d - b * c == 0:
        raise DegenerateDirections("ad - bc must be nonzero")
    return IntPolygon([(0, 0), (a, b), (a + c, b + d), (c, d)])


def parallelogram_lattice(a: int, b: int, c: int, d: int
                          ) -> list[tuple[tuple[int, int], SolidAngle]]:
    """Integer points of the closed parallelogram with their solid-angle weights."""
    region = parallelogram_region(a, b, c, d)
    xmin, xmax, ymin, ymax = region.bounding_box()
    out = []
    for x in range(xmin, xmax + 1):
        for y in range(ymin, ymax + 1):
            w = region.solid_angle((x, y))
            if w.value > 0.0:
                out.append(((x, y), w))
    return out


def double_sum(a: int, b: int, c: int, d: int, h: int, k: int) -> float:
    """Regularized full-lattice sum of (am+bn)^-(h+1) (cm+dn)^-(k+1).

    Zero for odd h+k.  For even h+k the value reduces to a finite weighted sum
    of periodized Bernoulli products over the lattice points of the closed
    parallelogram spanned by (a, b) and (c, d):
    (-1)^((h+k+2)/2) (2 pi)^(h+k+2) |ad-bc|^-1 * sum of w * B_{h+1}(u) B_{k+1}(v).
    """
    _require_coprime(a, b, "(a, b)")
    _require_coprime(c, d, "(c, d)")
    det = a * d - b * c
    if det == 0:
        raise DegenerateDirections("ad - bc must be nonzero")
    if (h + k) % 2 == 1:
        return 0.0
    bh = bernoulli_poly(h + 1).poly
    bk = bernoulli_poly(k + 1).poly
    exact_part = Fraction(0)
    float_part = 0.0
    for (m, n), w in parallelogram_lattice(a, b, c, d):
        u = Fraction(d * m - c * n, det)
        v = Fraction(-b * m + a * n, det)
        product = bh(u) * bk(v)
        if w.exact is not None:
            exact_part += w.exact * product
        else:
            float_part += w.value * float(product)
    sign = (-1) ** ((h + k + 2) // 2)
    scale = (2 * math.pi) ** (h + k + 2) / abs(det)
    return sign * scale * (float(exact_part) + float_part)


# -- mollified-series oracle -------------------------------------------------------


@dataclass(frozen=True)
class SumSpec:
    """Which lattice sum to evaluate: kind 'line' needs dirs (a,b,c,d); 'line2'
    needs (a,b,c,d,e,f); 'double' needs (a,b,c,d)."""

    kind: str
    dirs: tuple[int, ...]
    h: int
    k: int = 0

    def __post_init__(self):
        expected = {"line": 4, "line2": 6, "double": 4}
        if self.kind not in expected:
            raise ValueError(f"unknown sum kind {self.kind!r}")
        if len(self.dirs) != expected[self.kind]:
            raise ValueError(
                f"{self.kind} sums need {expected[self.kind]} direction entries")
        if self.h < 0 or self.k < 0:
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_json(cls, data) -> "SumSpec":
        if not isinstance(data, dict):
            raise ValueError("lemma-sum spec must be a JSON object")
        return cls(kind=data.get("kind", ""),
                   dirs=tuple(int(x) for x in data.get("dirs", ())),
                   h=int(data.get("h", 0)),
                   k=int(data.get("k", 0)))


def closed_form(spec: SumSpec) -> float:
    """Dispatch to the closed-form evaluation of the requested lattice sum."""
    if spec.kind == "line":
        return line_sum(*spec.dirs, spec.h)
    if spec.kind == "line2":
        return line_sum_two_factor(*spec.dirs, spec.h, spec.k)
    return double_sum(*spec.dirs, spec.h, spec.k)


def mollified_sum(spec: SumSpec, eps: float, cutoff: int) -> float:
    """Direct truncated summation of the defining series under the Gaussian
    multiplier exp(-pi eps^2 |point|^2), over lattice points with |point| <= cutoff.

    Symmetric points are paired before reduction, so odd-homogeneity sums
    cancel exactly.  Converges to the regularized value only as eps -> 0
    (error O(eps)); see `mollified_limit` for the extrapolated oracle.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if cutoff < 1:
        raise ValueError("cutoff must be a positive integer")
    if eps * cutoff < _TAIL_FACTOR:
        raise CutoffTooSmall(
            f"need eps*cutoff >= {_TAIL_FACTOR:.4f} so the Gaussian tail is below 1e-12")
    if spec.kind == "line":
        a, b, c, d = spec.dirs
        _require_coprime(c, d, "(c, d)")
        if a * d - b * c == 0:
            raise DegenerateDirections("ad - bc must be nonzero")
        return _line_partial(a, b, (d, -c), spec.h + 1, (), 0, eps, cutoff)
    if spec.kind == "line2":
        a, b, c, d, e, f = spec.dirs
        _require_coprime(e, f, "(e, f)")
        if a * f - b * e == 0 or c * f - d * e == 0:
            raise DegenerateDirections("af - be and cf - de must both be nonzero")
        return _line_partial(a, b, (f, -e), spec.h + 1, (c, d), spec.k + 1, eps, cutoff)
    a, b, c, d = spec.dirs
    _require_coprime(a, b, "(a, b)")
    _require_coprime(c, d, "(c, d)")
    if a * d - b * c == 0:
        raise DegenerateDirections("ad - bc must be nonzero")
    return _double_partial(a, b, c, d, spec.h + 1, spec.k + 1, eps, cutoff)


def _line_partial(a, b, direction, p1, cd, p2, eps, cutoff):
    """Sum over j*direction, j != 0, of the factored powers under the multiplier."""
    dx, dy = direction
    norm = math.hypot(dx, dy)
    jmax = int(cutoff // norm) if norm else 0
    if jmax < 1:
        return 0.0
    j = np.arange(1, jmax + 1, dtype=np.float64)
    f1 = float(a * dx + b * dy)
    terms = (j * f1) ** (-p1)
    if cd:
        f2 = float(cd[0] * dx + cd[1] * dy)
        terms = terms * (j * f2) ** (-p2)
    parity = p1 + p2  # pairing j with -j multiplies by (-1)^(p1+p2)
    paired = terms * (1.0 + (-1.0) ** parity)
    mult = np.exp(-math.pi * eps**2 * (norm * j) ** 2)
    return float(np.sum(paired * mult))


def _double_partial(a, b, c, d, p1, p2, eps, cutoff):
    rng = np.arange(-cutoff, cutoff + 1, dtype=np.int64)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    l1 = a * m + b * n
    l2 = c * m + d * n
    keep = (l1 != 0) & (l2 != 0) & (m * m + n * n <= cutoff * cutoff)
    keep &= (m > 0) | ((m == 0) & (n > 0))  # half lattice; pair with the mirror
    l1 = l1[keep].astype(np.float64)
    l2 = l2[keep].astype(np.float64)
    mm = m[keep].astype(np.float64)
    nn = n[keep].astype(np.float64)
    terms = l1 ** (-p1) * l2 ** (-p2)
    paired = terms * (1.0 + (-1.0) ** (p1 + p2))
    mult = np.exp(-math.pi * eps**2 * (mm**2 + nn**2))
    return float(np.sum(paired * mult))


def mollified_limit(spec: SumSpec, eps: float = 0.02, levels: int = 6,
                    coarsest: float = 0.3) -> float:
    """The eps -> 0 limit of the mollified sums, by Richardson extrapolation.

    Evaluates the partial sums on a geometric eps schedule (ratio sqrt 2)
    anchored at `eps` and extrapolates polynomially to zero; the truncation
    error of each partial sum is analytic in eps up to exponentially small
    terms, so a handful of levels reaches near machine precision.
    """
    schedule = [eps * 2 ** ((levels - 1 - i) / 2) for i in range(levels)]
    schedule = [e for e in schedule if e <= coarsest]
    if len(schedule) < 3:
        raise ValueError("schedule too short; decrease eps or raise coarsest")
    values = []
    for e in schedule:
        cutoff = int(math.ceil(_TAIL_FACTOR / e)) + 1
        values.append(mollified_sum(spec, e, cutoff))
    return neville_to_zero(schedule, values)


# -- empirical expansion fitting ----------------------------------------------------


@dataclass(frozen=True)
class DeltaFit:
    """Fitted even-power model S(N) ~ alpha0 + sum_j delta(j) N^(-2j).

    odd_residual is max |odd coefficient| / max |even coefficient| when odd
    powers were included in the fit (0 when the numerator vanishes);
    `condition` is the design-matrix condition number diagnostic.
    """

    alpha0: float
    deltas: tuple[tuple[int, float], ...]
    odd_residual: float
    condition: float
    exact: bool = False

    @property
    def ill_conditioned(self) -> bool:
        return self.condition > 1e12


def fit_delta(sums, w: int, include_odd: bool = False) -> DeltaFit:
    """Recover alpha0 and delta(1..w) from sampled (N, S(N)) pairs.

    Exact rational interpolation is used when every S(N) is a Fraction (taking
    the first as many samples as parameters).  Otherwise the model is fitted by
    least squares with each row scaled by N^(2w+2), the reciprocal of the
    truncation error the even-power expansion leaves at that sample, so large-N
    rows carry the weight they deserve.  With include_odd the model gains the
    powers N^-1, N^-3, ..., N^-(2w-1) and the fit reports how large they come
    out relative to the even ones.
    """
    pairs = [(int(N), v) for N, v in sums]
    nparams = 1 + w + (w if include_odd else 0)
    needed = (2 * w + 1) if include_odd else (w + 1)
    if len(pairs) < needed:
        raise InsufficientSamples(f"need at least {needed} samples, got {len(pairs)}")
    exponents = [0] + [2 * j for j in range(1, w + 1)]
    if include_odd:
        exponents += [2 * j - 1 for j in range(1, w + 1)]

    all_exact = all(isinstance(v, Fraction) for _, v in pairs)
    if all_exact:
        use = pairs[:nparams]
        matrix = [[Fraction(1, N**e) for e in exponents] for N, _ in use]
        coeffs = solve_exact(matrix, [v for _, v in use])
        condition = 0.0
        coeffs_f = [float(x) for x in coeffs]
    else:
        a = np.array([[float(N) ** (-e) for e in exponents] for N, _ in pairs])
        y = np.array([float(v) for _, v in pairs])
        # w = 0 fits a plain mean; otherwise weight rows by the reciprocal
        # truncation error N^(2w+2)
        row_scale = np.array([float(N) ** (2 * w + 2) if w else 1.0
                              for N, _ in pairs])
        coeffs_f, *_ = np.linalg.lstsq(a * row_scale[:, None], y * row_scale,
                                       rcond=None)
        coeffs_f = list(coeffs_f)
        condition = float(np.linalg.cond(a * row_scale[:, None]))
    alpha0 = coeffs_f[0]
    deltas = tuple((j, coeffs_f[j]) for j in range(1, w + 1))
    odd_residual = 0.0
    if include_odd and w >= 1:
        odd = [abs(c) for c in coeffs_f[w + 1:]]
        even = [abs(c) for c in coeffs_f[:w + 1]]
        num = max(odd, default=0.0)
        den = max(even, default=0.0)
        odd_residual = 0.0 if num == 0.0 else (math.inf if den == 0.0 else num / den)
    return DeltaFit(alpha0, deltas, odd_residual, condition, exact=all_exact)
