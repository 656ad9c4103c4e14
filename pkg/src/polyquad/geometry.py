"""Integer polygons with exact lattice-point classification and solid-angle weights.

Every geometric predicate runs in integer arithmetic on the polygon scaled by
the lattice refinement N, so boundary decisions are never subject to rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Point = tuple[int, int]


class PolygonError(ValueError):
    """Invalid polygon input; `indices` names the offending vertices."""

    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        super().__init__(message)
        self.indices = indices


class TooFewVertices(PolygonError):
    pass


class DuplicateConsecutive(PolygonError):
    pass


class CollinearTriple(PolygonError):
    pass


class SelfIntersecting(PolygonError):
    pass


@dataclass(frozen=True)
class PointClass:
    """Location of a lattice sample against a polygon."""

    kind: str  # "outside" | "interior" | "edge" | "vertex"
    vertex_index: int | None = None

    @property
    def on_boundary(self) -> bool:
        return self.kind in ("edge", "vertex")


OUTSIDE = PointClass("outside")
INTERIOR = PointClass("interior")
EDGE_INTERIOR = PointClass("edge")


@dataclass(frozen=True)
class SolidAngle:
    """Fraction of a small disk around a point covered by the polygon.

    `exact` is set whenever the value is a provable multiple of 1/8 (always for
    outside/edge/interior points, and at vertices whose edge vectors meet at a
    multiple of 45 degrees; all other vertex angles are irrational).
    """

    value: float
    exact: Fraction | None = None


_ANGLE_ZERO = SolidAngle(0.0, Fraction(0))
_ANGLE_FULL = SolidAngle(1.0, Fraction(1))
_ANGLE_HALF = SolidAngle(0.5, Fraction(1, 2))


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """p collinear with a-b assumed; true if p lies within the closed segment."""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_share_point(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Exact test: do the closed segments p1-p2 and q1-q2 intersect at all?"""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 \
            and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


class IntPolygon:
    """Simple polygon with integer vertices, normalized to counterclockwise order.

    Construction validates simplicity: at least three vertices, no repeated
    consecutive vertex, no three consecutive collinear vertices, and no contact
    between non-adjacent edges.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs: list[Point] = []
        for i, v in enumerate(vertices):
            x, y = v
            if int(x) != x or int(y) != y:
                raise PolygonError(f"vertex {i} has non-integer coordinates", (i,))
            vs.append((int(x), int(y)))
        r = len(vs)
        if r < 3:
            raise TooFewVertices(f"need at least 3 vertices, got {r}", tuple(range(r)))
        for i in range(r):
            if vs[i] == vs[(i + 1) % r]:
                raise DuplicateConsecutive(
                    f"vertices {i} and {(i + 1) % r} coincide", (i, (i + 1) % r))
        for i in range(r):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % r]
            if _cross(a, b, c) == 0:
                raise CollinearTriple(
                    f"vertices {(i - 1) % r}, {i}, {(i + 1) % r} are collinear",
                    ((i - 1) % r, i, (i + 1) % r))
        for i in range(r):
            for j in range(i + 1, r):
                if j == i + 1 or (i == 0 and j == r - 1):
                    continue  # adjacent edges share exactly their common vertex
                if _segments_share_point(vs[i], vs[(i + 1) % r], vs[j], vs[(j + 1) % r]):
                    raise SelfIntersecting(
                        f"edges {i} and {j} intersect", (i, j))
        if _shoelace_doubled(vs) < 0:
            vs[1:] = vs[:0:-1]  # reverse orientation, keep the first vertex first
        self.vertices = tuple(vs)

    # -- basic quantities ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, IntPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"IntPolygon({list(self.vertices)!r})"

    def area(self) -> Fraction:
        """Exact area by the shoelace formula (always a half-integer)."""
        return Fraction(_shoelace_doubled(list(self.vertices)), 2)

    def scaled_vertices(self, n: int) -> list[Point]:
        return [(n * x, n * y) for x, y in self.vertices]

    def bounding_box(self, scale: int = 1) -> tuple[int, int, int, int]:
        xs = [scale * x for x, _ in self.vertices]
        ys = [scale * y for _, y in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    # -- classification and weights ------------------------------------------

    def classify(self, point: Point, scale: int = 1) -> PointClass:
        """Class of the rational point (point / scale) against the polygon.

        Works entirely on the polygon scaled by `scale`; no floating point.
        """
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        return _classify_point(self.scaled_vertices(scale), int(point[0]), int(point[1]))

    def solid_angle(self, point: Point, scale: int = 1) -> SolidAngle:
        """Normalized angle of the polygon at point/scale: 0 outside, 1 inside,
        1/2 on an open edge, interior-angle/2pi at a vertex."""
        cls = self.classify(point, scale)
        if cls.kind == "outside":
            return _ANGLE_ZERO
        if cls.kind == "interior":
            return _ANGLE_FULL
        if cls.kind == "edge":
            return _ANGLE_HALF
        return self.vertex_angle(cls.vertex_index)

    def vertex_angle(self, i: int) -> SolidAngle:
        """Interior angle at vertex i as a fraction of the full turn."""
        r = len(self.vertices)
        v = self.vertices[i]
        prev = self.vertices[(i - 1) % r]
        nxt = self.vertices[(i + 1) % r]
        ux, uy = prev[0] - v[0], prev[1] - v[1]
        wx, wy = nxt[0] - v[0], nxt[1] - v[1]
        cross = wx * uy - wy * ux
        dot = wx * ux + wy * uy
        theta = math.atan2(cross, dot)
        if theta <= 0:
            theta += 2 * math.pi
        value = theta / (2 * math.pi)
        exact = None
        if dot == 0:
            exact = Fraction(1, 4) if cross > 0 else Fraction(3, 4)
        elif abs(cross) == abs(dot):
            if cross > 0:
                exact = Fraction(1, 8) if dot > 0 else Fraction(3, 8)
            else:
                exact = Fraction(7, 8) if dot > 0 else Fraction(5, 8)
        if exact is not None:
            value = float(exact)
        return SolidAngle(value, exact)

    # -- counting ------------------------------------------------------------

    def boundary_count(self) -> int:
        """Number of lattice points on the boundary: sum of gcd(|dx|, |dy|) per edge."""
        r = len(self.vertices)
        total = 0
        for i in range(r):
            x0, y0 = self.vertices[i]
            x1, y1 = self.vertices[(i + 1) % r]
            total += math.gcd(abs(x1 - x0), abs(y1 - y0))
        return total

    def interior_count(self) -> int:
        """Number of lattice points strictly inside, by bounding-box scan."""
        interior, _, _ = lattice_point_classes(self, 1)
        return len(interior)

    def pick_residual(self) -> Fraction:
        """area - (I + B/2 - 1); identically zero for every simple integer polygon."""
        i = self.interior_count()
        b = self.boundary_count()
        return self.area() - (i + Fraction(b, 2) - 1)

    def vertex_angle_sum(self) -> float:
        """Sum of the vertex solid angles; equals r/2 - 1 for an r-gon."""
        return sum(self.vertex_angle(i).value for i in range(len(self.vertices)))

    # -- triangulation ---------------------------------------------------------

    def triangulate(self) -> list["IntPolygon"]:
        """Ear-clipping decomposition into len-2 triangles with disjoint interiors.

        An ear is only clipped when no other remaining vertex lies in the closed
        candidate triangle, which keeps diagonals through lattice vertices out.
        """
        vs = self.vertices
        if len(vs) == 3:
            return [self]
        idx = list(range(len(vs)))
        triangles: list[IntPolygon] = []
        while len(idx) > 3:
            clipped = False
            m = len(idx)
            for pos in range(m):
                i0, i1, i2 = idx[pos - 1], idx[pos], idx[(pos + 1) % m]
                a, b, c = vs[i0], vs[i1], vs[i2]
                if _cross(a, b, c) <= 0:
                    continue
                if any(_in_closed_triangle(vs[j], a, b, c)
                       for j in idx if j not in (i0, i1, i2)):
                    continue
                triangles.append(IntPolygon((a, b, c)))
                del idx[pos]
                clipped = True
                break
            if not clipped:
                raise RuntimeError("no ear found; polygon validation is broken")
        triangles.append(IntPolygon(tuple(vs[i] for i in idx)))
        return triangles

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": [[x, y] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "IntPolygon":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "vertices" not in data:
            raise PolygonError("polygon JSON must be an object with a 'vertices' key")
        return cls(data["vertices"])


def _shoelace_doubled(vs: list[Point]) -> int:
    total = 0
    r = len(vs)
    for i in range(r):
        x0, y0 = vs[i]
        x1, y1 = vs[(i + 1) % r]
        total += x0 * y1 - x1 * y0
    return total


def _in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Membership in the closed CCW triangle abc, exact."""
    return (_cross(a, b, p) >= 0 and _cross(b, c, p) >= 0 and _cross(c, a, p) >= 0)


def _classify_point(scaled: list[Point], px: int, py: int) -> PointClass:
    r = len(scaled)
    for i, v in enumerate(scaled):
        if v == (px, py):
            return PointClass("vertex", i)
    crossings = 0
    on_edge = False
    for i in range(r):
        ax, ay = scaled[i]
        bx, by = scaled[(i + 1) % r]
        if (bx - ax) * (py - ay) - (by - ay) * (px - ax) == 0 \
                and min(ax, bx) <= px <= max(ax, bx) \
                and min(ay, by) <= py <= max(ay, by):
            on_edge = True
            break
        if (ay > py) != (by > py):
            dy = by - ay
            num = (ax - px) * dy + (py - ay) * (bx - ax)
            if (num > 0) == (dy > 0):
                crossings += 1
    if on_edge:
        return EDGE_INTERIOR
    return INTERIOR if crossings % 2 else OUTSIDE


def classify_scaled_point(point: Point, scale: int, polygon: IntPolygon) -> PointClass:
    """Class of point/scale against the polygon (module-level convenience)."""
    return polygon.classify(point, scale)


def solid_angle(point: Point, scale: int, polygon: IntPolygon) -> SolidAngle:
    """Solid-angle weight of the polygon at point/scale."""
    return polygon.solid_angle(point, scale)


_NUMPY_COORD_LIMIT = 1 << 20  # int64-safe for all cross products used below


def lattice_point_arrays(polygon: IntPolygon, scale: int):
    """Classify every lattice point of the bounding box of scale*polygon.

    Returns (ix, iy, ex, ey, vertex_entries): int64 coordinate arrays for the
    interior and the edge-interior points of the scaled polygon, plus each
    vertex lattice point paired with its polygon vertex index.
    """
    scaled = polygon.scaled_vertices(scale)
    xmin, xmax, ymin, ymax = polygon.bounding_box(scale)
    vertex_entries = [(v, i) for i, v in enumerate(scaled)]
    if max(abs(xmin), abs(xmax), abs(ymin), abs(ymax)) <= _NUMPY_COORD_LIMIT:
        xs = np.arange(xmin, xmax + 1, dtype=np.int64)
        ys = np.arange(ymin, ymax + 1, dtype=np.int64)
        px, py = np.meshgrid(xs, ys, indexing="ij")
        on_edge = np.zeros(px.shape, dtype=bool)
        crossings = np.zeros(px.shape, dtype=np.int64)
        r = len(scaled)
        for i in range(r):
            ax, ay = scaled[i]
            bx, by = scaled[(i + 1) % r]
            collinear = (bx - ax) * (py - ay) - (by - ay) * (px - ax) == 0
            inbox = ((px >= min(ax, bx)) & (px <= max(ax, bx))
                     & (py >= min(ay, by)) & (py <= max(ay, by)))
            on_edge |= collinear & inbox
            straddles = (ay > py) != (by > py)
            dy = by - ay
            num = (ax - px) * dy + (py - ay) * (bx - ax)
            crossings += (straddles & ((num > 0) == (dy > 0))).astype(np.int64)
        inside = (~on_edge) & (crossings % 2 == 1)
        ix, iy = px[inside], py[inside]
        is_vertex = np.zeros(px.shape, dtype=bool)
        for vx, vy in scaled:
            is_vertex |= (px == vx) & (py == vy)
        edge_only = on_edge & ~is_vertex
        ex, ey = px[edge_only], py[edge_only]
    else:
        ipts, epts = [], []
        vertex_set = set(scaled)
        for x in range(xmin, xmax + 1):
            for y in range(ymin, ymax + 1):
                if (x, y) in vertex_set:
                    continue
                cls = _classify_point(scaled, x, y)
                if cls.kind == "interior":
                    ipts.append((x, y))
                elif cls.kind == "edge":
                    epts.append((x, y))
        ix = np.array([p[0] for p in ipts], dtype=object)
        iy = np.array([p[1] for p in ipts], dtype=object)
        ex = np.array([p[0] for p in epts], dtype=object)
        ey = np.array([p[1] for p in epts], dtype=object)
    return ix, iy, ex, ey, vertex_entries


def lattice_point_classes(polygon: IntPolygon, scale: int):
    """Lists-of-tuples view of lattice_point_arrays (interior, edge, vertices)."""
    ix, iy, ex, ey, vertex_entries = lattice_point_arrays(polygon, scale)
    interior = [(int(x), int(y)) for x, y in zip(ix, iy)]
    edge = [(int(x), int(y)) for x, y in zip(ex, ey)]
    return interior, edge, vertex_entries
