"""Integrand wrappers: exact polynomials or analytic functions with declared derivatives."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .polynomials import Poly1D, Poly2D


class DerivativeOrderExceeded(ValueError):
    """A derivative beyond the declared order of an analytic integrand was requested."""


class Function2D:
    """Common interface: call for values, `partial` for mixed derivatives."""

    is_polynomial = False

    def __call__(self, x, y):
        raise NotImplementedError

    def partial(self, dx: int, dy: int, x, y):
        raise NotImplementedError


class PolynomialFunction2D(Function2D):
    is_polynomial = True

    def __init__(self, poly: Poly2D):
        self.poly = poly
        self._float_terms = [(float(c), a, b) for c, a, b in poly.terms()]
        self._partials: dict[tuple[int, int], Poly2D] = {}

    def __call__(self, x, y):
        if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
            return self.poly(Fraction(x), Fraction(y))
        total = 0.0
        for c, a, b in self._float_terms:
            total = total + c * x**a * y**b
        return total

    def partial_poly(self, dx: int, dy: int) -> Poly2D:
        key = (dx, dy)
        if key not in self._partials:
            self._partials[key] = self.poly.partial(dx, dy)
        return self._partials[key]

    def partial(self, dx: int, dy: int, x, y):
        p = self.partial_poly(dx, dy)
        if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
            return p(Fraction(x), Fraction(y))
        total = 0.0
        for (a, b), c in p.monomials.items():
            total = total + float(c) * x**a * y**b
        return total

    def __repr__(self):
        return f"PolynomialFunction2D({self.poly!r})"


class AnalyticFunction2D(Function2D):
    """Smooth integrand given by an evaluator plus a partial-derivative callback.

    `partials(dx, dy, x, y)` must cover every order up to `max_order` (the total
    order dx + dy); `max_order=None` declares derivatives of every order.
    """

    def __init__(self, evaluator, partials, max_order: int | None = None, name: str = ""):
        self._eval = evaluator
        self._partials = partials
        self.max_order = max_order
        self.name = name

    def __call__(self, x, y):
        return self._eval(x, y)

    def partial(self, dx: int, dy: int, x, y):
        if self.max_order is not None and dx + dy > self.max_order:
            raise DerivativeOrderExceeded(
                f"order {dx + dy} requested, declared maximum is {self.max_order}")
        return self._partials(dx, dy, x, y)

    def __repr__(self):
        return f"AnalyticFunction2D({self.name or self._eval!r})"


class Function1D:
    is_polynomial = False

    def __call__(self, x):
        raise NotImplementedError

    def derivative(self, order: int, x):
        raise NotImplementedError


class PolynomialFunction1D(Function1D):
    is_polynomial = True

    def __init__(self, poly: Poly1D):
        self.poly = poly
        self._derivs = [poly]

    def _nth(self, order: int) -> Poly1D:
        while len(self._derivs) <= order:
            self._derivs.append(self._derivs[-1].derivative())
        return self._derivs[order]

    def __call__(self, x):
        return self.poly(x)

    def derivative(self, order: int, x):
        return self._nth(order)(x)


class AnalyticFunction1D(Function1D):
    def __init__(self, evaluator, derivative, max_order: int | None = None, name: str = ""):
        self._eval = evaluator
        self._deriv = derivative
        self.max_order = max_order
        self.name = name

    def __call__(self, x):
        return self._eval(x)

    def derivative(self, order: int, x):
        if order == 0:
            return self._eval(x)
        if self.max_order is not None and order > self.max_order:
            raise DerivativeOrderExceeded(
                f"order {order} requested, declared maximum is {self.max_order}")
        return self._deriv(order, x)


def _expxy(x, y):
    return np.exp(x + y)


def _expxy_partial(dx, dy, x, y):
    return np.exp(x + y)


# Analytic test integrands addressable by name from file specs and the CLI.
BUILTIN_INTEGRANDS: dict[str, AnalyticFunction2D] = {
    "expxy": AnalyticFunction2D(_expxy, _expxy_partial, max_order=None, name="expxy"),
}


def polynomial_from_monomials(entries) -> PolynomialFunction2D:
    """Build a polynomial integrand from [num, den, xpow, ypow] rows."""
    monos = []
    for row in entries:
        if len(row) != 4:
            raise ValueError("each monomial needs [num, den, xpow, ypow]")
        num, den, a, b = row
        monos.append((Fraction(int(num), int(den)), int(a), int(b)))
    return PolynomialFunction2D(Poly2D(monos))


def function_from_json(data) -> Function2D:
    """Parse {"monomials": [[num, den, xpow, ypow], ...]} or {"builtin": name}."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ValueError("function spec must be a JSON object")
    if "monomials" in data:
        return polynomial_from_monomials(data["monomials"])
    if "builtin" in data:
        name = data["builtin"]
        if name not in BUILTIN_INTEGRANDS:
            raise ValueError(f"unknown builtin integrand {name!r}; "
                             f"available: {sorted(BUILTIN_INTEGRANDS)}")
        return BUILTIN_INTEGRANDS[name]
    raise ValueError("function spec needs a 'monomials' or 'builtin' key")
