"""Planar primitives for straight-edged quadrilaterals.

Implicit edge lines, intersections of opposite-edge lines (the poles),
edge midpoints, the vertex centroid, shoelace area, and quad validation.
Everything is plain double-precision geometry with scale-relative
tolerances; all types are immutable values and all functions are pure.

Vertex numbering is fixed: vertices (1)..(4) run counterclockwise, edge
(1)(2) comes first, and the poles are

* pole5 -- intersection of the lines through edges (1)(2) and (3)(4),
* pole6 -- intersection of the lines through edges (2)(3) and (4)(1).

A pole is either a finite :class:`Point2` or a :class:`PoleAtInfinity`
carrying the common unit direction of the two parallel edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import CoincidentLines, DegenerateInput, DegenerateQuad

#: Two unit edge directions count as parallel below this cross-product magnitude.
PARALLEL_TOL = 1e-9
#: Relative residual allowed when checking that a point lies on a line.
RESIDUAL_TOL = 1e-9
#: Vertices closer than this fraction of the quad diameter are coincident.
VERTEX_TOL = 1e-9
#: Relative area threshold below which three vertices count as collinear.
COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class Point2:
    """A Cartesian point with coordinates (x1, x2)."""

    x1: float
    x2: float

    def __post_init__(self):
        object.__setattr__(self, "x1", float(self.x1))
        object.__setattr__(self, "x2", float(self.x2))
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise DegenerateInput(f"point coordinates must be finite, got ({self.x1}, {self.x2})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x1, self.x2)


PointLike = Union[Point2, Sequence[float]]


def as_point(p: PointLike) -> Point2:
    """Coerce a Point2 or a length-2 coordinate sequence to Point2."""
    if isinstance(p, Point2):
        return p
    x1, x2 = p
    return Point2(float(x1), float(x2))


def distance(p: PointLike, q: PointLike) -> float:
    p, q = as_point(p), as_point(q)
    return math.hypot(q.x1 - p.x1, q.x2 - p.x2)


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


@dataclass(frozen=True)
class Line2:
    """A line in normalized implicit form a*x1 + b*x2 + c = 0 with a**2 + b**2 = 1.

    The constructor normalizes the coefficients; (a, b) == (0, 0) is rejected.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        n = math.hypot(self.a, self.b)
        if n == 0.0 or not math.isfinite(n):
            raise DegenerateInput("line normal (a, b) must be nonzero and finite")
        object.__setattr__(self, "a", float(self.a) / n)
        object.__setattr__(self, "b", float(self.b) / n)
        object.__setattr__(self, "c", float(self.c) / n)

    def residual_at(self, p: PointLike) -> float:
        """Signed distance of p from the line (the implicit form evaluated at p)."""
        p = as_point(p)
        return self.a * p.x1 + self.b * p.x2 + self.c

    def direction(self) -> tuple[float, float]:
        """Unit direction vector of the line."""
        return (self.b, -self.a)


@dataclass(frozen=True)
class PoleAtInfinity:
    """Marker for the pole of a parallel edge pair; carries the common unit direction."""

    direction: tuple[float, float]

    def __post_init__(self):
        dx, dy = self.direction
        n = math.hypot(dx, dy)
        if n == 0.0 or not math.isfinite(n):
            raise DegenerateInput("direction of a pole at infinity must be a nonzero vector")
        object.__setattr__(self, "direction", (float(dx) / n, float(dy) / n))


Pole = Union[Point2, PoleAtInfinity]


@dataclass(frozen=True)
class PoleSet:
    """The two opposite-edge intersection points of a quad, finite or at infinity."""

    pole5: Pole
    pole6: Pole

    @property
    def both_finite(self) -> bool:
        return isinstance(self.pole5, Point2) and isinstance(self.pole6, Point2)


@dataclass(frozen=True)
class MidpointFrame:
    """Edge midpoints r7..r10 (edges (1)(2), (2)(3), (3)(4), (4)(1)) and centroid rg."""

    r7: Point2
    r8: Point2
    r9: Point2
    r10: Point2
    rg: Point2


def _signed_area(pts: Sequence[Point2]) -> float:
    s = 0.0
    n = len(pts)
    for k in range(n):
        p, q = pts[k], pts[(k + 1) % n]
        s += p.x1 * q.x2 - q.x1 * p.x2
    return 0.5 * s


def _segments_cross(p1: Point2, p2: Point2, p3: Point2, p4: Point2) -> bool:
    """True when open segments (p1,p2) and (p3,p4) properly intersect."""
    d1 = _cross(p2.x1 - p1.x1, p2.x2 - p1.x2, p3.x1 - p1.x1, p3.x2 - p1.x2)
    d2 = _cross(p2.x1 - p1.x1, p2.x2 - p1.x2, p4.x1 - p1.x1, p4.x2 - p1.x2)
    d3 = _cross(p4.x1 - p3.x1, p4.x2 - p3.x2, p1.x1 - p3.x1, p1.x2 - p3.x2)
    d4 = _cross(p4.x1 - p3.x1, p4.x2 - p3.x2, p2.x1 - p3.x1, p2.x2 - p3.x2)
    return d1 * d2 < 0 and d3 * d4 < 0


@dataclass(frozen=True)
class Quad:
    """A simple, counterclockwise, straight-edged quadrilateral.

    Construction validates the vertex set; failures raise
    :class:`~quadmap.errors.DegenerateQuad` with a reason of
    ``coincident-vertices``, ``collinear-triple``, ``self-intersecting``
    or ``clockwise``.  Vertex order is never changed: clockwise input is
    an error, not something to silently fix, so that node numbering
    always matches the natural-coordinate corner table.
    """

    vertices: tuple[Point2, Point2, Point2, Point2]

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.vertices)
        if len(pts) != 4:
            raise DegenerateQuad("coincident-vertices", f"need exactly 4 vertices, got {len(pts)}")
        object.__setattr__(self, "vertices", pts)

        diam = max(distance(pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4))
        if diam == 0.0:
            raise DegenerateQuad("coincident-vertices", "all four vertices coincide")
        for i in range(4):
            for j in range(i + 1, 4):
                if distance(pts[i], pts[j]) <= VERTEX_TOL * diam:
                    raise DegenerateQuad(
                        "coincident-vertices", f"vertices ({i + 1}) and ({j + 1}) coincide"
                    )
        for k in range(4):
            a, b, c = pts[k], pts[(k + 1) % 4], pts[(k + 2) % 4]
            area2 = abs(_cross(b.x1 - a.x1, b.x2 - a.x2, c.x1 - a.x1, c.x2 - a.x2))
            if area2 <= COLLINEAR_TOL * diam * diam:
                raise DegenerateQuad(
                    "collinear-triple",
                    f"vertices ({k + 1}), ({(k + 1) % 4 + 1}), ({(k + 2) % 4 + 1}) are collinear",
                )
        if _segments_cross(pts[0], pts[1], pts[2], pts[3]) or _segments_cross(
            pts[1], pts[2], pts[3], pts[0]
        ):
            raise DegenerateQuad("self-intersecting", "edges cross: the polygon is not simple")
        if _signed_area(pts) <= 0.0:
            raise DegenerateQuad("clockwise", "vertices are ordered clockwise; reverse them")

    @property
    def diameter(self) -> float:
        pts = self.vertices
        return max(distance(pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4))

    def edges(self) -> tuple[tuple[Point2, Point2], ...]:
        v = self.vertices
        return ((v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0]))


def validate_quad(vertices: Sequence[PointLike]) -> Quad:
    """Build a validated Quad from four coordinate pairs (counterclockwise)."""
    return Quad(tuple(as_point(p) for p in vertices))


def line_through_points(p: PointLike, q: PointLike) -> Line2:
    """Implicit line through two distinct points.

    The coefficients come from expanding the 3x3 determinant with rows
    (x1, x2, 1), (p, 1), (q, 1), then normalizing.
    """
    p, q = as_point(p), as_point(q)
    scale = max(1.0, abs(p.x1), abs(p.x2), abs(q.x1), abs(q.x2))
    if distance(p, q) <= 1e-14 * scale:
        raise DegenerateInput(f"cannot build a line through coincident points {p} and {q}")
    a = p.x2 - q.x2
    b = q.x1 - p.x1
    c = p.x1 * q.x2 - q.x1 * p.x2
    return Line2(a, b, c)


def intersect_lines(l1: Line2, l2: Line2) -> Pole:
    """Intersection point of two lines, or their common direction when parallel.

    Raises :class:`~quadmap.errors.CoincidentLines` when the lines are
    parallel and identical (to within a scale-relative tolerance).
    """
    d1, d2 = l1.direction(), l2.direction()
    cross = _cross(d1[0], d1[1], d2[0], d2[1])
    if abs(cross) <= PARALLEL_TOL:  # directions are unit vectors
        # Distance between the parallel lines: evaluate l2 at l1's foot point.
        foot = Point2(-l1.a * l1.c, -l1.b * l1.c)
        gap = abs(l2.residual_at(foot))
        if gap <= RESIDUAL_TOL * max(1.0, abs(l1.c), abs(l2.c)):
            raise CoincidentLines("the two lines coincide; no unique intersection")
        return PoleAtInfinity(d1)
    det = _cross(l1.a, l1.b, l2.a, l2.b)
    x1 = (l1.b * l2.c - l2.b * l1.c) / det
    x2 = (l2.a * l1.c - l1.a * l2.c) / det
    return Point2(x1, x2)


def compute_poles(q: Quad) -> PoleSet:
    """Both poles of a quad: opposite-edge line intersections, finite or at infinity."""
    v = q.vertices
    try:
        pole5 = intersect_lines(line_through_points(v[0], v[1]), line_through_points(v[2], v[3]))
        pole6 = intersect_lines(line_through_points(v[1], v[2]), line_through_points(v[3], v[0]))
    except CoincidentLines as exc:
        raise DegenerateQuad("coincident-edges", str(exc)) from exc
    return PoleSet(pole5, pole6)


def midpoint_frame(q: Quad) -> MidpointFrame:
    """Edge midpoints and the vertex centroid, as componentwise arithmetic means."""
    v = q.vertices

    def mid(p: Point2, r: Point2) -> Point2:
        return Point2((p.x1 + r.x1) / 2.0, (p.x2 + r.x2) / 2.0)

    rg = Point2(
        (v[0].x1 + v[1].x1 + v[2].x1 + v[3].x1) / 4.0,
        (v[0].x2 + v[1].x2 + v[2].x2 + v[3].x2) / 4.0,
    )
    return MidpointFrame(mid(v[0], v[1]), mid(v[1], v[2]), mid(v[2], v[3]), mid(v[3], v[0]), rg)


def shoelace_area(q: Quad) -> float:
    """Area of the quad from the shoelace (cross-product) sum; positive for valid quads."""
    return _signed_area(q.vertices)
