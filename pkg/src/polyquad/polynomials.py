"""Exact polynomials in one and two variables with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational

Coeff = Fraction | int


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


class Poly1D:
    """Dense univariate polynomial; coefficient index equals the power."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Horner evaluation; exact for Fraction input, float otherwise."""
        acc = 0 if isinstance(x, (Fraction, int)) else 0.0
        if isinstance(x, (Fraction, int)):
            for c in reversed(self.coeffs):
                acc = acc * x + c
        else:
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
        return acc

    def derivative(self) -> "Poly1D":
        return Poly1D([i * c for i, c in enumerate(self.coeffs)][1:])

    def nth_derivative(self, n: int) -> "Poly1D":
        p = self
        for _ in range(n):
            p = p.derivative()
        return p

    def antiderivative(self) -> "Poly1D":
        """Antiderivative with zero constant term."""
        return Poly1D([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integral(self, a: Coeff, b: Coeff) -> Fraction:
        f = self.antiderivative()
        return f(Fraction(b)) - f(Fraction(a))

    def __add__(self, other: "Poly1D") -> "Poly1D":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly1D([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Poly1D") -> "Poly1D":
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, Poly1D):
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly1D(out)
        c = _as_fraction(other)
        return Poly1D([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly1D) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly1D({list(self.coeffs)!r})"


class Poly2D:
    """Sparse bivariate polynomial as a map (xpow, ypow) -> coefficient."""

    __slots__ = ("monomials",)

    def __init__(self, monomials=()):
        acc: dict[tuple[int, int], Fraction] = {}
        items = monomials.items() if isinstance(monomials, dict) else (
            ((a, b), c) for c, a, b in monomials
        )
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError("negative power in monomial")
            c = _as_fraction(c)
            key = (int(a), int(b))
            acc[key] = acc.get(key, Fraction(0)) + c
        self.monomials = {k: v for k, v in sorted(acc.items()) if v != 0}

    def terms(self):
        """Monomials as (coefficient, xpow, ypow), deterministically ordered."""
        return [(c, a, b) for (a, b), c in self.monomials.items()]

    @property
    def total_degree(self) -> int:
        return max((a + b for a, b in self.monomials), default=0)

    def is_homogeneous(self) -> bool:
        degs = {a + b for a, b in self.monomials}
        return len(degs) <= 1

    def __call__(self, x, y):
        if isinstance(x, (Fraction, int)) and isinstance(y, (Fraction, int)):
            return sum((c * x**a * y**b for (a, b), c in self.monomials.items()),
                       Fraction(0))
        total = 0.0
        for (a, b), c in self.monomials.items():
            total = total + float(c) * x**a * y**b
        return total

    def partial(self, dx: int, dy: int) -> "Poly2D":
        """Exact mixed partial derivative d^(dx+dy) / dx^dx dy^dy."""
        if dx < 0 or dy < 0:
            raise ValueError("derivative orders must be nonnegative")
        out = {}
        for (a, b), c in self.monomials.items():
            if a < dx or b < dy:
                continue
            f = Fraction(1)
            for i in range(dx):
                f *= a - i
            for i in range(dy):
                f *= b - i
            out[(a - dx, b - dy)] = out.get((a - dx, b - dy), Fraction(0)) + c * f
        return Poly2D(out)

    def __add__(self, other: "Poly2D") -> "Poly2D":
        out = dict(self.monomials)
        for k, v in other.monomials.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Poly2D(out)

    def __mul__(self, other):
        if isinstance(other, Poly2D):
            out: dict[tuple[int, int], Fraction] = {}
            for (a1, b1), c1 in self.monomials.items():
                for (a2, b2), c2 in other.monomials.items():
                    k = (a1 + a2, b1 + b2)
                    out[k] = out.get(k, Fraction(0)) + c1 * c2
            return Poly2D(out)
        c = _as_fraction(other)
        return Poly2D({k: c * v for k, v in self.monomials.items()})

    __rmul__ = __mul__

    def compose_affine(self, p: Coeff, q: Coeff, a: Coeff, b: Coeff,
                       c: Coeff, d: Coeff) -> "Poly2D":
        """Substitute x = p + a*s + c*t, y = q + b*s + d*t; returns a polynomial in (s, t)."""
        xs = _binomial_powers(p, a, c, max((ax for ax, _ in self.monomials), default=0))
        ys = _binomial_powers(q, b, d, max((by for _, by in self.monomials), default=0))
        out: dict[tuple[int, int], Fraction] = {}
        for (ax, by), coeff in self.monomials.items():
            for (i1, j1), c1 in xs[ax].items():
                for (i2, j2), c2 in ys[by].items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, Fraction(0)) + coeff * c1 * c2
        return Poly2D(out)

    def eval_partial_float(self, dx: int, dy: int, x: float, y: float) -> float:
        return self.partial(dx, dy)(x, y)

    def __eq__(self, other):
        return isinstance(other, Poly2D) and self.monomials == other.monomials

    def __repr__(self):
        return f"Poly2D({self.terms()!r})"


def _binomial_powers(off: Coeff, cs: Coeff, ct: Coeff, maxpow: int):
    """Powers of (off + cs*s + ct*t) up to maxpow, as monomial dicts in (s, t)."""
    off, cs, ct = _as_fraction(off), _as_fraction(cs), _as_fraction(ct)
    base = {}
    if off:
        base[(0, 0)] = off
    if cs:
        base[(1, 0)] = cs
    if ct:
        base[(0, 1)] = ct
    powers = [{(0, 0): Fraction(1)}]
    for _ in range(maxpow):
        prev = powers[-1]
        nxt: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in prev.items():
            for (i2, j2), c2 in base.items():
                k = (i1 + i2, j1 + j2)
                nxt[k] = nxt.get(k, Fraction(0)) + c1 * c2
        powers.append(nxt)
    return powers


def poly2d_partial(p: Poly2D, dx: int, dy: int) -> Poly2D:
    """Exact mixed partial derivative of a bivariate polynomial."""
    return p.partial(dx, dy)


def inner_integral_along_y(g: Poly2D) -> Poly1D:
    """The univariate polynomial x -> integral of g(x, y) dy over 0 <= y <= 1 - x."""
    out = [Fraction(0)]
    for (a, b), c in g.monomials.items():
        # x^a (1-x)^(b+1) / (b+1), expanded binomially
        for i in range(b + 2):
            term = c * comb(b + 1, i) * (-1) ** i / (b + 1)
            k = a + i
            if k >= len(out):
                out.extend([Fraction(0)] * (k + 1 - len(out)))
            out[k] += term
    return Poly1D(out)


def inner_integral_along_x(g: Poly2D) -> Poly1D:
    """The univariate polynomial y -> integral of g(x, y) dx over 0 <= x <= 1 - y."""
    swapped = Poly2D({(b, a): c for (a, b), c in g.monomials.items()})
    return inner_integral_along_y(swapped)


def diagonal_slice(g: Poly2D) -> Poly1D:
    """G(t) = integral of g(s, t - s) ds over 0 <= s <= t, computed exactly."""
    out = [Fraction(0)]
    for (a, b), c in g.monomials.items():
        # g(s, t-s) = sum_i C(b,i) (-1)^i s^(a+i) t^(b-i); integrate s over [0, t]
        k = a + b + 1
        if k >= len(out):
            out.extend([Fraction(0)] * (k + 1 - len(out)))
        total = Fraction(0)
        for i in range(b + 1):
            total += Fraction(comb(b, i) * (-1) ** i, a + i + 1)
        out[k] += c * total
    return Poly1D(out)


def unit_simplex_integral(g: Poly2D) -> Fraction:
    """Exact integral of g over the standard simplex {0 <= s, t, s + t <= 1}.

    Uses the monomial identity: the integral of s^a t^b equals a! b! / (a + b + 2)!.
    """
    total = Fraction(0)
    for (a, b), c in g.monomials.items():
        num = 1
        for i in range(1, a + 1):
            num *= i
        for i in range(1, b + 1):
            num *= i
        den = 1
        for i in range(1, a + b + 3):
            den *= i
        total += c * Fraction(num, den)
    return total
