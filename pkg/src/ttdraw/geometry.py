"""Euclidean primitives: robust orientation, triangles, convex regions.

Points are plain ``(x, y)`` tuples of floats.  The orientation predicate is
the single source of truth for all sign decisions; it evaluates a floating
filter first and falls back to exact rational arithmetic when the filter
cannot certify the sign.  Everything here is a pure function of its inputs
and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateTriangle, EmptyRegion, PreconditionViolated

Point = tuple[float, float]

LEFT = 1
RIGHT = -1
COLLINEAR = 0

# Coarse forward-error bound for the 2x2 determinant below: 4 products and
# 3 additions, each contributing <= 1 ulp of the running magnitude.
_EPS = 2.220446049250313e-16
_FILTER = 8.0 * _EPS


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the signed area of (p, q, r): LEFT=+1, RIGHT=-1, COLLINEAR=0.

    Uses a floating-point filter; if the magnitude of the determinant is
    below the rounding-error bound, re-evaluates exactly with rationals.
    """
    ax = q[0] - p[0]
    ay = q[1] - p[1]
    bx = r[0] - p[0]
    by = r[1] - p[1]
    det = ax * by - ay * bx
    mag = abs(ax * by) + abs(ay * bx)
    if abs(det) > _FILTER * mag:
        return LEFT if det > 0.0 else RIGHT
    return _orientation_exact(p, q, r)


def _orientation_exact(p: Point, q: Point, r: Point) -> int:
    px, py = Fraction(p[0]), Fraction(p[1])
    det = (Fraction(q[0]) - px) * (Fraction(r[1]) - py) - (
        Fraction(q[1]) - py
    ) * (Fraction(r[0]) - px)
    if det > 0:
        return LEFT
    if det < 0:
        return RIGHT
    return COLLINEAR


def dist(p: Point, q: Point) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Strict interior test; boundary contact counts as outside."""
    o1 = orientation(a, b, p)
    o2 = orientation(b, c, p)
    o3 = orientation(c, a, p)
    return o1 == o2 == o3 and o1 != COLLINEAR


def point_in_triangle_closed(p: Point, a: Point, b: Point, c: Point) -> bool:
    o1 = orientation(a, b, p)
    o2 = orientation(b, c, p)
    o3 = orientation(c, a, p)
    pos = any(o == LEFT for o in (o1, o2, o3))
    neg = any(o == RIGHT for o in (o1, o2, o3))
    return not (pos and neg)


def _on_segment_collinear(p: Point, a: Point, b: Point) -> bool:
    # assumes p collinear with a, b; checks p within the closed bounding box
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_conflict(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """True iff closed segments p1p2 and q1q2 share any point that is not a
    shared endpoint of both.

    This is the planarity notion: distinct edges may meet only at a common
    endpoint, and edges sharing an endpoint must not overlap collinearly.
    """
    shared = []
    for u in (p1, p2):
        for v in (q1, q2):
            if u == v:
                shared.append(u)
    if len(shared) >= 2:
        # identical segments
        return True
    o1 = orientation(p1, p2, q1)
    o2 = orientation(p1, p2, q2)
    o3 = orientation(q1, q2, p1)
    o4 = orientation(q1, q2, p2)
    if shared:
        s = shared[0]
        # Proper crossing cannot happen through the shared endpoint alone;
        # conflict iff the other endpoint of one segment lies on the other.
        for p, (a, b) in (
            (q1, (p1, p2)),
            (q2, (p1, p2)),
            (p1, (q1, q2)),
            (p2, (q1, q2)),
        ):
            if p == s:
                continue
            if orientation(a, b, p) == COLLINEAR and _on_segment_collinear(p, a, b):
                return True
        return False
    if o1 != o2 and o3 != o4 and COLLINEAR not in (o1, o2, o3, o4):
        return True
    # touching / collinear overlap cases
    if o1 == COLLINEAR and _on_segment_collinear(q1, p1, p2):
        return True
    if o2 == COLLINEAR and _on_segment_collinear(q2, p1, p2):
        return True
    if o3 == COLLINEAR and _on_segment_collinear(p1, q1, q2):
        return True
    if o4 == COLLINEAR and _on_segment_collinear(p2, q1, q2):
        return True
    return False


@dataclass(frozen=True)
class Triangle:
    a: Point
    b: Point
    c: Point

    def points(self) -> tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)


def triangle_area(a: Point, b: Point, c: Point) -> float:
    return abs(
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    ) / 2.0


def triangle_perimeter(a: Point, b: Point, c: Point) -> float:
    return dist(a, b) + dist(b, c) + dist(c, a)


def angle_at(v: Point, p: Point, q: Point) -> float:
    """Angle at vertex v of triangle (p, v, q), in radians."""
    ux, uy = p[0] - v[0], p[1] - v[1]
    wx, wy = q[0] - v[0], q[1] - v[1]
    nu = math.hypot(ux, uy)
    nw = math.hypot(wx, wy)
    if nu == 0.0 or nw == 0.0:
        raise DegenerateTriangle("zero-length side")
    cosang = (ux * wx + uy * wy) / (nu * nw)
    cosang = max(-1.0, min(1.0, cosang))
    return math.acos(cosang)


def triangle_metrics(t: Triangle) -> dict:
    """Area, perimeter and the three angles of a non-degenerate triangle."""
    a, b, c = t.points()
    if orientation(a, b, c) == COLLINEAR:
        raise DegenerateTriangle(f"collinear points {a}, {b}, {c}")
    return {
        "area": triangle_area(a, b, c),
        "perimeter": triangle_perimeter(a, b, c),
        "angles": (angle_at(a, b, c), angle_at(b, a, c), angle_at(c, a, b)),
    }


def is_thin(t: Triangle) -> bool:
    """A triangle is thin iff every side has length >= 1 and area <= 1/4."""
    a, b, c = t.points()
    if min(dist(a, b), dist(b, c), dist(c, a)) < 1.0:
        return False
    return triangle_area(a, b, c) <= 0.25


def _longest_edge_order(t: Triangle) -> tuple[Point, Point, Point]:
    """Returns (A, B, C) with AB the longest edge and C the apex."""
    a, b, c = t.points()
    sides = [
        (dist(a, b), a, b, c),
        (dist(b, c), b, c, a),
        (dist(c, a), c, a, b),
    ]
    sides.sort(key=lambda s: s[0])
    _, p, q, apex = sides[-1]
    return p, q, apex


def obtuse_split(t: Triangle, d: Point) -> dict:
    """For a thin triangle with longest edge AB and an interior point D with
    |CD| >= 1, computes the angles ACD and BCD and identifies the obtuse one.

    Raises PreconditionViolated when the inputs do not satisfy the contract;
    raises AssertionError if neither angle exceeds pi/2 (which would
    contradict the thin-triangle geometry).
    """
    if not is_thin(t):
        raise PreconditionViolated("triangle is not thin")
    a, b, c = _longest_edge_order(t)
    if not point_in_triangle(d, *t.points()):
        raise PreconditionViolated("D is not strictly inside the triangle")
    if dist(c, d) < 1.0:
        raise PreconditionViolated("|CD| < 1")
    ang_acd = angle_at(c, a, d)
    ang_bcd = angle_at(c, b, d)
    if ang_acd >= ang_bcd:
        which, obtuse = "ACD", ang_acd
    else:
        which, obtuse = "BCD", ang_bcd
    assert obtuse > math.pi / 2.0, "no obtuse angle: thin-triangle split failed"
    return {"angle_ACD": ang_acd, "angle_BCD": ang_bcd, "obtuse_one": which}


def cut_isosceles(t: Triangle, corner: Point) -> "ConvexRegion":
    """Cuts a unit isosceles triangle off a thin triangle at ``corner``.

    ``corner`` must be an endpoint of the longest edge.  Returns the convex
    quadrilateral that remains: both cut points lie at distance exactly 1
    from the corner along the two incident sides.
    """
    if not is_thin(t):
        raise PreconditionViolated("triangle is not thin")
    a, b, c = _longest_edge_order(t)
    if corner == a:
        a, b = b, a
    elif corner != b:
        raise PreconditionViolated("corner must be an endpoint of the longest edge")
    # cut at distance 1 from b toward a and toward c
    lab = dist(b, a)
    lbc = dist(b, c)
    if lab < 1.0 or lbc < 1.0:
        raise PreconditionViolated("sides at the corner are shorter than 1")
    d = (b[0] + (a[0] - b[0]) / lab, b[1] + (a[1] - b[1]) / lab)
    e = (b[0] + (c[0] - b[0]) / lbc, b[1] + (c[1] - b[1]) / lbc)
    boundary = [a, d, e, c]
    if orientation(a, b, c) == RIGHT:
        boundary = list(reversed(boundary))
    return ConvexRegion(boundary)


@dataclass
class ConvexRegion:
    """Open convex polygon given by a counterclockwise boundary.

    The interior is treated as open; membership tests are strict unless
    stated otherwise.
    """

    boundary: list[Point]

    def __post_init__(self):
        if len(self.boundary) < 3:
            raise PreconditionViolated("convex region needs >= 3 boundary points")

    def contains(self, p: Point, *, strict: bool = True) -> bool:
        n = len(self.boundary)
        for i in range(n):
            a = self.boundary[i]
            b = self.boundary[(i + 1) % n]
            o = orientation(a, b, p)
            if o == RIGHT:
                return False
            if o == COLLINEAR and strict:
                return False
        return True

    def area(self) -> float:
        s = 0.0
        n = len(self.boundary)
        for i in range(n):
            x1, y1 = self.boundary[i]
            x2, y2 = self.boundary[(i + 1) % n]
            s += x1 * y2 - x2 * y1
        return abs(s) / 2.0

    def perimeter(self) -> float:
        n = len(self.boundary)
        return sum(
            dist(self.boundary[i], self.boundary[(i + 1) % n]) for i in range(n)
        )


def clip_half_plane(
    region: ConvexRegion, line: tuple[Point, Point], keep_side: int
) -> ConvexRegion | None:
    """Clips a convex region by the line through ``line``; keeps the side
    ``keep_side`` (LEFT or RIGHT relative to the directed line).

    Returns None when the clipped region is empty (no exception: emptiness
    is an expected outcome during vacant-region construction).
    """
    a, b = line
    if a == b:
        raise PreconditionViolated("degenerate clipping line")
    out: list[Point] = []
    pts = region.boundary
    n = len(pts)
    for i in range(n):
        cur = pts[i]
        nxt = pts[(i + 1) % n]
        oc = orientation(a, b, cur)
        on = orientation(a, b, nxt)
        cur_in = oc == keep_side or oc == COLLINEAR
        nxt_in = on == keep_side or on == COLLINEAR
        if cur_in:
            out.append(cur)
        if cur_in != nxt_in and oc != COLLINEAR and on != COLLINEAR:
            out.append(_line_segment_intersection(a, b, cur, nxt))
    # drop consecutive duplicates
    dedup: list[Point] = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) >= 2 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        return None
    reg = ConvexRegion(dedup)
    if reg.area() == 0.0:
        return None
    return reg


def _line_segment_intersection(a: Point, b: Point, p: Point, q: Point) -> Point:
    """Intersection of line ab with segment pq (the caller guarantees the
    endpoints straddle the line strictly)."""
    dxl, dyl = b[0] - a[0], b[1] - a[1]
    dxs, dys = q[0] - p[0], q[1] - p[1]
    denom = dxl * dys - dyl * dxs
    t = (dxl * (a[1] - p[1]) - dyl * (a[0] - p[0])) / denom
    return (p[0] + t * dxs, p[1] + t * dys)


def bounding_box_region(points: list[Point], factor: float = 10.0) -> ConvexRegion:
    """Axis-aligned box covering ``points`` scaled by ``factor`` about its
    center; seeds vacant-region clipping."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    cx = (min(xs) + max(xs)) / 2.0
    cy = (min(ys) + max(ys)) / 2.0
    half = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * factor / 2.0
    return ConvexRegion(
        [
            (cx - half, cy - half),
            (cx + half, cy - half),
            (cx + half, cy + half),
            (cx - half, cy + half),
        ]
    )


def vacant_region(
    coords: dict[int, Point], edge: tuple[int, int], *, box_factor: float = 10.0
) -> ConvexRegion:
    """Intersection of all open half-planes, determined by pairs of drawn
    vertices, that contain the open segment of ``edge``.

    Naive O(n^2) pair enumeration with incremental convex clipping, seeded
    by a large bounding box.  Raises EmptyRegion if clipping annihilates
    the region, which signals a degenerate drawing.
    """
    u, v = edge
    if u not in coords or v not in coords:
        raise PreconditionViolated("edge endpoints are not drawn")
    pu, pv = coords[u], coords[v]
    region = bounding_box_region(list(coords.values()), box_factor)
    ids = sorted(coords)
    for i, a_id in enumerate(ids):
        for b_id in ids[i + 1 :]:
            a, b = coords[a_id], coords[b_id]
            if a == b:
                continue
            su = orientation(a, b, pu)
            sv = orientation(a, b, pv)
            if su == COLLINEAR and sv == COLLINEAR:
                continue
            if su != COLLINEAR and sv != COLLINEAR and su != sv:
                continue  # line crosses the open segment: no constraint
            side = su if su != COLLINEAR else sv
            region = clip_half_plane(region, (a, b), side)
            if region is None:
                raise EmptyRegion(f"vacant region of {edge} is empty")
    return region
