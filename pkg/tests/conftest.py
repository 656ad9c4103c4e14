import pytest

from polyquad import BUILTIN_INTEGRANDS, IntPolygon, polynomial_from_monomials

# The worked-example triangle y > x/2, y < 3 - x, y < 2x.
APPENDIX_VERTICES = [(0, 0), (2, 1), (1, 2)]
# Nonconvex test pentagon (reflex vertex at (2, 2)).
PENTAGON_VERTICES = [(0, 0), (3, 0), (4, 3), (2, 2), (0, 3)]


@pytest.fixture(scope="session")
def appendix_triangle():
    return IntPolygon(APPENDIX_VERTICES)


@pytest.fixture(scope="session")
def unit_square():
    return IntPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture(scope="session")
def standard_simplex():
    return IntPolygon([(0, 0), (1, 0), (0, 1)])


@pytest.fixture(scope="session")
def pentagon():
    return IntPolygon(PENTAGON_VERTICES)


@pytest.fixture(scope="session")
def g_one():
    return polynomial_from_monomials([[1, 1, 0, 0]])


@pytest.fixture(scope="session")
def g_x2y3():
    return polynomial_from_monomials([[1, 1, 2, 3]])


@pytest.fixture(scope="session")
def g_expxy():
    return BUILTIN_INTEGRANDS["expxy"]
