"""Constructive drawing of 2-trees with bounded local edge-length ratio.

The drawing is built component by component, in BFS-layer order.  Each
tree-component is drawn in a normalized frame where its root edge XY has
length span = 2 + w (w a working slack derived from epsilon), folded so
that an anchor edge from a root to a component vertex U is long (length in
(2, 2+w)) exactly when the tree distance from U to the apex is odd, and
short (length in (1, 1+w_s)) otherwise; tree edges are always short.
Placements happen strictly inside disjoint triangular zones, which makes
the drawing planar by construction; an explicit clearance scan afterwards
reserves a convex cell around every edge that roots a deeper component.

Working slack: w = sqrt(4+eps) - 2, so the worst ratio of two edges
meeting at a vertex, (2+w)^2, equals 4+eps exactly; every realized pair
stays strictly below it.  Reported per-component scales keep the
convention that the root edge has normalized length 2 + eps/3, under
which all normalized lengths land inside the (1, 1+eps/3) and
(2, 2+eps/3) bands.

Coordinates collapse geometrically with nesting depth (each component is
folded into a sliver of its parent cell), so deep instances can exceed
what double precision certifies; such placements raise NumericalCollapse
instead of emitting a drawing the planarity oracle would reject.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import MalformedGraph, NumericalCollapse, PreconditionViolated
from .geometry import ConvexRegion, LEFT, Point, dist, orientation
from .graphs import Edge, TwoTree, norm_edge
from .layering import TreeComponent, compute_layers, extract_tree_components

ROOT = "root"
LONG = "long"
SHORT = "short"

# Placement fractions.  Margins are always fractions of locally available
# gaps, never of absolute lengths.
Q_CEIL = 0.25  # fraction of the gap to a ceiling left unused
Q_RADIAL = 0.5  # position inside a radial window
Q_XPRIME_Y = 0.6  # height fraction for the near-root helper vertex
Q_APEX_Y = 0.55  # height fraction for the apex
Q_GUARD = 0.6  # lift fraction for the helper-subtree guard point
Q_CELL = 0.45  # fraction of measured clearance a reserved cell may use
LAMBDA_FRAC = 0.6  # helper long edge sits at 2 + LAMBDA_FRAC * w
APEX_X_FRAC = 0.55  # apex abscissa sits at 1 + APEX_X_FRAC * w
MU_MIN = 0.02
MU_MAX = 0.5
GUARD_RATIO = 1e-12  # of the drawing extent; below this we refuse to place


@dataclass
class DrawConfig:
    """Drawing slack parameters.

    epsilon is the global slack; delta = epsilon/3 is the per-component
    slack used for reporting and normalized intervals.  placement_margin
    is the fraction of available slack that near-point offsets consume.
    """

    epsilon: float = 0.1
    placement_margin: float = 0.1
    delta: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise PreconditionViolated("epsilon must be in (0, 1)")
        self.delta = self.epsilon / 3.0

    @property
    def w_long(self) -> float:
        """Working long-interval slack: (2+w)^2 == 4 + epsilon."""
        return math.sqrt(4.0 + self.epsilon) - 2.0

    @property
    def w_short(self) -> float:
        return 0.75 * self.w_long

    @property
    def span(self) -> float:
        """Normalized root-edge length of the working frame."""
        return 2.0 + self.w_long


@dataclass
class Drawing:
    """Vertex coordinates plus per-component provenance.

    component_scale maps a component index to the factor carrying its
    normalized frame (root edge length 2 + delta) into global coordinates.
    edge_class records how each edge was drawn; vertex_component records
    which component placed each vertex (initial-edge endpoints get -1).
    """

    coords: dict[int, Point]
    component_scale: dict[int, float] = field(default_factory=dict)
    edge_class: dict[Edge, str] = field(default_factory=dict)
    vertex_component: dict[int, int] = field(default_factory=dict)
    component_cells: dict[int, list[Point]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "coords": {str(v): [p[0], p[1]] for v, p in sorted(self.coords.items())},
            "scales": {str(c): s for c, s in sorted(self.component_scale.items())},
            "classes": {
                f"{u},{v}": cls for (u, v), cls in sorted(self.edge_class.items())
            },
        }

    @staticmethod
    def from_json(data: dict) -> "Drawing":
        try:
            coords = {
                int(v): (float(p[0]), float(p[1]))
                for v, p in data["coords"].items()
            }
            scales = {int(c): float(s) for c, s in data.get("scales", {}).items()}
            classes = {}
            for key, cls in data.get("classes", {}).items():
                u, v = key.split(",")
                classes[norm_edge(int(u), int(v))] = cls
        except (KeyError, ValueError, TypeError, AttributeError) as exc:
            raise MalformedGraph(f"bad drawing JSON: {exc}") from exc
        return Drawing(coords=coords, component_scale=scales, edge_class=classes)

    def edges(self) -> list[Edge]:
        return sorted(self.edge_class)


def dumps_drawing(d: Drawing) -> str:
    return json.dumps(d.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# local frame and small geometric helpers


class _Frame:
    """Similarity between a component's local frame and global coordinates.

    Maps X to (0,0) and Y to (span, 0); sigma = -1 mirrors the half-plane
    so the cell interior always lies above the local x-axis.
    """

    def __init__(self, x_pt: Point, y_pt: Point, span: float, sigma: float):
        self.x_pt = x_pt
        self.span = span
        dx = y_pt[0] - x_pt[0]
        dy = y_pt[1] - x_pt[1]
        self.base_len = math.hypot(dx, dy)
        self.ux = dx / self.base_len
        self.uy = dy / self.base_len
        self.k = self.base_len / span
        self.sigma = sigma

    def to_local(self, p: Point) -> Point:
        rx = p[0] - self.x_pt[0]
        ry = p[1] - self.x_pt[1]
        return (
            (rx * self.ux + ry * self.uy) / self.k,
            self.sigma * (self.ux * ry - self.uy * rx) / self.k,
        )

    def to_global(self, p: Point) -> Point:
        lx = p[0] * self.k
        ly = self.sigma * p[1] * self.k
        return (
            self.x_pt[0] + lx * self.ux - ly * self.uy,
            self.x_pt[1] + lx * self.uy + ly * self.ux,
        )


@dataclass
class _Cell:
    """Convex cell around a base edge, stored in global coordinates.

    poly[0] and poly[1] are exactly the drawn points of ids[0] and ids[1];
    the interior lies on the left of poly[0] -> poly[1].
    """

    poly: list[Point]
    ids: tuple[int, int]


def _roof_height(poly: list[Point], x: float) -> float:
    """Height of the convex cell boundary above abscissa x; poly is CCW
    with poly[0] = (0,0), poly[1] = (span, 0)."""
    best = 0.0
    n = len(poly)
    for i in range(1, n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if a[0] == b[0]:
            continue
        lo, hi = (a, b) if a[0] < b[0] else (b, a)
        if lo[0] <= x <= hi[0]:
            t = (x - lo[0]) / (hi[0] - lo[0])
            y = lo[1] + t * (hi[1] - lo[1])
            best = max(best, y)
    return best


def _in_poly_strict(poly: list[Point], p: Point) -> bool:
    n = len(poly)
    for i in range(n):
        if orientation(poly[i], poly[(i + 1) % n], p) != LEFT:
            return False
    return True


def _seg_point_dist(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    length2 = dx * dx + dy * dy
    if length2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / length2
    t = max(0.0, min(1.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _seg_seg_dist(a: Point, b: Point, c: Point, d: Point) -> float:
    # the segments we compare are always disjoint
    return min(
        _seg_point_dist(a, c, d),
        _seg_point_dist(b, c, d),
        _seg_point_dist(c, a, b),
        _seg_point_dist(d, a, b),
    )


# ---------------------------------------------------------------------------
# component drawing


@dataclass
class _Task:
    """Pending placement of ``children`` around ``parent``.

    The free region is bounded by the rays anchor->dir_guard and
    anchor->parent, the ceiling segment parent..ceil_far, and (when
    dir_guard != ceil_far) the lower segment dir_guard..ceil_far.  In the
    common case dir_guard == ceil_far and the region is the open triangle
    (anchor, parent, guard); the split form appears for the fan gaps
    between consecutive tree edges at a long vertex.
    """

    anchor_vertex: int
    anchor_pt: Point
    parent: int
    parent_pt: Point
    parent_long: bool
    dir_guard: Point
    ceil_far: Point
    children: list[int]


class _ComponentDrawer:
    """Draws one tree-component inside a convex cell (local frame).

    Zones are open triangles (anchor, parent point, guard point); placing
    a vertex splits its zone into the continuation for later siblings, the
    subtree zone of the new vertex, and a spare sliver, all disjoint.  The
    drawing is therefore planar by construction.
    """

    def __init__(
        self,
        comp: TreeComponent,
        cfg: DrawConfig,
        cell_local: list[Point],
        rooting: set[Edge],
        floor: float,
        x_root: int,
        y_root: int,
    ):
        self.comp = comp
        self.cfg = cfg
        self.cell = cell_local
        self.rooting = rooting
        self.floor = floor
        self.x_root = x_root
        self.y_root = y_root
        self.span = cfg.span
        self.w_l = cfg.w_long
        self.w_s = cfg.w_short
        self.pos: dict[int, Point] = {}
        self.classes: dict[Edge, str] = {}
        self.segments: list[tuple[Point, Point]] = []
        self._order = {v: i for i, v in enumerate(comp.vertices)}

    def fail(self, why: str) -> NumericalCollapse:
        return NumericalCollapse(
            f"component {self.comp.index} (layer {self.comp.layer}): {why}",
            layer=self.comp.layer,
            component=self.comp.index,
        )

    # -- drawing ----------------------------------------------------------

    def run(self) -> None:
        comp = self.comp
        x_pt: Point = (0.0, 0.0)
        y_pt: Point = (self.span, 0.0)
        apex = comp.apex
        kids = comp.children[apex]
        if not kids:
            self._place_apex_only(x_pt, y_pt)
            return
        xprime = self._pick_xprime(kids)
        xp_pt = self._place_xprime(y_pt)
        z_pt = self._place_apex(x_pt, y_pt, xp_pt)
        self._add(apex, z_pt, x_pt, y_pt)
        self._add(xprime, xp_pt, y_pt, z_pt)
        self.classes[norm_edge(self.x_root, apex)] = SHORT
        self.classes[norm_edge(self.y_root, apex)] = SHORT
        self.classes[norm_edge(self.y_root, xprime)] = LONG
        self.classes[norm_edge(apex, xprime)] = SHORT

        ordered = self._ordered_children(apex)
        x_side = [c for c in ordered if comp.side_of[c] == self.x_root]
        y_side = [
            c for c in ordered if comp.side_of[c] == self.y_root and c != xprime
        ]
        tasks: deque[_Task] = deque()
        tasks.append(
            _Task(self.x_root, x_pt, apex, z_pt, False, y_pt, y_pt, x_side)
        )
        tasks.append(
            _Task(self.y_root, y_pt, apex, z_pt, False, xp_pt, xp_pt, y_side)
        )
        g_xp = self._guard_above(xp_pt)
        tasks.append(
            _Task(
                self.y_root,
                y_pt,
                xprime,
                xp_pt,
                True,
                g_xp,
                g_xp,
                self._ordered_children(xprime),
            )
        )
        while tasks:
            self._run_task(tasks.popleft(), tasks)

    def _ordered_children(self, v: int) -> list[int]:
        # construction order, but children whose tree edge roots a deeper
        # component go last: the leftover zone keeps their surroundings fat
        return sorted(
            self.comp.children[v],
            key=lambda c: (norm_edge(v, c) in self.rooting, self._order[c]),
        )

    def _add(self, v: int, p: Point, nbr1: Point, nbr2: Point) -> None:
        self.pos[v] = p
        self.segments.append((p, nbr1))
        self.segments.append((p, nbr2))

    # -- bootstrap placements ---------------------------------------------

    def _place_apex_only(self, x_pt: Point, y_pt: Point) -> None:
        apex = self.comp.apex
        zx = self.span / 2.0
        cap = 0.5 * math.sqrt(max((1.0 + self.w_s) ** 2 - zx * zx, 0.0))
        zy = Q_APEX_Y * min(_roof_height(self.cell, zx), cap)
        if zy <= self.floor:
            raise self.fail("cell too flat for the apex")
        z = (zx, zy)
        if not _in_poly_strict(self.cell, z):
            raise self.fail("apex fell outside its cell")
        if not (1.0 < dist(x_pt, z) < 1.0 + self.w_s):
            raise self.fail("apex anchor length out of band")
        self._add(apex, z, x_pt, y_pt)
        self.classes[norm_edge(self.x_root, apex)] = SHORT
        self.classes[norm_edge(self.y_root, apex)] = SHORT

    def _pick_xprime(self, kids: list[int]) -> int:
        for c in kids:
            if self.comp.side_of[c] == self.y_root:
                return c
        raise self.fail("role choice left no helper candidate")

    def _place_xprime(self, y_pt: Point) -> Point:
        """Helper vertex adjacent to Y and the apex, placed near X; its
        long edge to Y has length exactly 2 + LAMBDA_FRAC * w."""
        lam = 2.0 + LAMBDA_FRAC * self.w_l
        y_cap = 0.55 * math.sqrt((1.0 + self.w_s) ** 2 - 1.0)
        x = self.span - lam
        y = 0.0
        for _ in range(80):
            roof = _roof_height(self.cell, max(x, 1e-300))
            y = Q_XPRIME_Y * min(roof, y_cap)
            if y <= self.floor:
                raise self.fail("no height available for the near-root helper")
            nx = self.span - math.sqrt(lam * lam - y * y)
            if abs(nx - x) <= 0.01 * nx:
                x = nx
                break
            x = nx
        xp = (x, y)
        if not _in_poly_strict(self.cell, xp):
            # fall back to a lower, certainly interior position
            for _ in range(60):
                y *= 0.5
                if y <= self.floor:
                    raise self.fail("helper vertex does not fit in the cell")
                x = self.span - math.sqrt(lam * lam - y * y)
                xp = (x, y)
                if _in_poly_strict(self.cell, xp):
                    break
            else:
                raise self.fail("helper vertex does not fit in the cell")
        if not (2.0 < dist(xp, y_pt) < 2.0 + self.w_l):
            raise self.fail("helper long edge out of band")
        return xp

    def _place_apex(self, x_pt: Point, y_pt: Point, xp_pt: Point) -> Point:
        zx = 1.0 + APEX_X_FRAC * self.w_l
        t = (zx - xp_pt[0]) / (self.span - xp_pt[0])
        seg_h = xp_pt[1] * (1.0 - t)  # height of segment X'..Y above zx
        cap = 0.5 * math.sqrt(max((1.0 + 0.7 * self.w_l) ** 2 - zx * zx, 0.0))
        zy = Q_APEX_Y * min(seg_h, _roof_height(self.cell, zx), cap)
        side_x = orientation(xp_pt, y_pt, x_pt)
        for _ in range(80):
            if zy <= self.floor:
                raise self.fail("no height available for the apex")
            z = (zx, zy)
            if (
                _in_poly_strict(self.cell, z)
                and orientation(xp_pt, y_pt, z) == side_x
                and 1.0 < dist(x_pt, z) < 1.0 + self.w_s
                and 1.0 < dist(y_pt, z) < 1.0 + self.w_s
                and 1.0 < dist(xp_pt, z) < 1.0 + self.w_s
            ):
                return z
            zy *= 0.5
        raise self.fail("apex placement did not converge")

    def _guard_above(self, xp_pt: Point) -> Point:
        roof = _roof_height(self.cell, xp_pt[0])
        for frac in (Q_GUARD, 0.25, 0.1):
            lift = frac * (roof - xp_pt[1])
            if lift <= self.floor:
                continue
            g = (xp_pt[0], xp_pt[1] + lift)
            if _in_poly_strict(self.cell, g):
                return g
        raise self.fail("no room above the helper vertex")

    # -- fold tasks ---------------------------------------------------------

    def _run_task(self, task: _Task, tasks: deque) -> None:
        if not task.children:
            return
        dguard = task.dir_guard
        ceil_far = task.ceil_far
        weights = [self.comp.weight[c] for c in task.children]
        w_total = float(sum(weights) + len(weights))
        placed: list[tuple[int, Point, Point, Point]] = []
        for c, w_c in zip(task.children, weights):
            w_total -= w_c + 1.0
            # fraction of lift room left for the siblings still to come
            rest_frac = (w_total + 1.0) / (w_total + w_c + 2.0)
            if task.parent_long:
                pt = self._place_short_neighbor(task, dguard, ceil_far, rest_frac)
                cls = SHORT
            else:
                pt = self._place_long_neighbor(task, dguard, ceil_far, rest_frac)
                cls = LONG
            self._add(c, pt, task.anchor_pt, task.parent_pt)
            self.classes[norm_edge(task.anchor_vertex, c)] = cls
            self.classes[norm_edge(task.parent, c)] = SHORT
            placed.append((c, pt, dguard, ceil_far))
            dguard = pt
            ceil_far = pt
        if task.parent_long:
            # children are short: the subtree of each folds into the fan
            # gap between its tree edge and the next sibling's; the last
            # one gets the remaining sliver along the anchor..parent edge
            for i, (c, pt, _dg, _cf) in enumerate(placed):
                if i + 1 < len(placed):
                    nxt = placed[i + 1][1]
                    tasks.append(
                        _Task(
                            task.anchor_vertex,
                            task.anchor_pt,
                            c,
                            pt,
                            False,
                            nxt,
                            task.parent_pt,
                            self._ordered_children(c),
                        )
                    )
                else:
                    tasks.append(
                        _Task(
                            task.anchor_vertex,
                            task.anchor_pt,
                            c,
                            pt,
                            False,
                            task.parent_pt,
                            task.parent_pt,
                            self._ordered_children(c),
                        )
                    )
        else:
            # children are long: each subtree keeps the guard that was
            # current at its own placement
            for c, pt, dg, cf in placed:
                tasks.append(
                    _Task(
                        task.anchor_vertex,
                        task.anchor_pt,
                        c,
                        pt,
                        True,
                        dg,
                        dg,
                        self._ordered_children(c),
                    )
                )

    def _region_ok(
        self,
        u: Point,
        p: Point,
        parent: Point,
        dguard: Point,
        ceil_far: Point,
    ) -> bool:
        """Strict containment in the task region (see _Task)."""
        wedge = orientation(p, dguard, parent)
        if wedge == 0:
            return False
        if orientation(p, dguard, u) != wedge:
            return False
        if orientation(p, parent, u) != orientation(p, parent, dguard):
            return False
        if orientation(parent, ceil_far, u) != orientation(parent, ceil_far, p):
            return False
        if dguard != ceil_far:
            if orientation(dguard, ceil_far, u) != orientation(
                dguard, ceil_far, parent
            ):
                return False
        return True

    def _ceiling_point_at_radius(
        self, p: Point, v: Point, f: Point, r: float
    ) -> Point | None:
        """Point on segment v..f at distance r from p (increasing branch)."""
        ex, ey = f[0] - v[0], f[1] - v[1]
        wx, wy = v[0] - p[0], v[1] - p[1]
        a = ex * ex + ey * ey
        if a == 0.0:
            return None
        b = 2.0 * (wx * ex + wy * ey)
        c = wx * wx + wy * wy - r * r
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            return None
        t = (-b + math.sqrt(disc)) / (2.0 * a)
        if not (0.0 < t < 1.0):
            return None
        return (v[0] + t * ex, v[1] + t * ey)

    def _place_long_neighbor(
        self, task: _Task, dguard: Point, ceil_far: Point, share: float
    ) -> Point:
        """Child of a short-anchored vertex, anchor distance in the long
        band.

        Aims directly at the ceiling segment parent..ceil_far: picks the
        ceiling point whose anchor distance sits inside the feasible band,
        then pulls radially inward between the region's lower boundary and
        the ceiling.
        """
        p = task.anchor_pt
        v = task.parent_pt
        rv = dist(p, v)
        rf = dist(p, ceil_far)
        lo = max(2.0, rv + 1.0)
        hi0 = min(2.0 + self.w_l, rv + 1.0 + self.w_s)
        if hi0 <= lo:
            raise self.fail("long window empty before ceilings")
        hi_aim = min(hi0 + (hi0 - lo), rf)
        if hi_aim <= lo:
            raise self.fail("ceiling below the long band")
        for frac in (0.6, 0.8, 0.4, 0.9, 0.25, 0.97, 0.1, 0.99, 0.5, 0.75):
            r_aim = lo + frac * (hi_aim - lo)
            q = self._ceiling_point_at_radius(p, v, ceil_far, r_aim)
            if q is None:
                continue
            rho = dist(p, q)
            r_floor = 0.0
            if dguard != ceil_far:
                hit = self._ray_ceiling(p, q, dguard, ceil_far)
                if hit is not None and hit < rho:
                    r_floor = hit
            base_lo = max(lo, r_floor + Q_CEIL * (rho - r_floor))
            base_hi = min(hi0, rho - Q_CEIL * (rho - max(r_floor, lo)))
            if base_hi <= base_lo:
                continue
            r_u = base_lo + Q_RADIAL * (base_hi - base_lo)
            u = (
                p[0] + (q[0] - p[0]) * r_u / rho,
                p[1] + (q[1] - p[1]) * r_u / rho,
            )
            if (
                self._region_ok(u, p, v, dguard, ceil_far)
                and lo < dist(p, u) < hi0
                and 1.0 < dist(v, u) < 1.0 + self.w_s
                and base_hi - base_lo > self.floor
            ):
                return u
        raise self.fail("long placement found no certified position")

    def _place_short_neighbor(
        self, task: _Task, dguard: Point, ceil_far: Point, share: float
    ) -> Point:
        """Child of a long-anchored vertex: both new edges short, placed
        just off the midpoint of the anchor..parent segment, lifted toward
        the direction guard."""
        p = task.anchor_pt
        v = task.parent_pt
        rv = dist(p, v)
        mid = ((p[0] + v[0]) / 2.0, (p[1] + v[1]) / 2.0)
        side = orientation(p, v, dguard)
        if side == 0:
            raise self.fail("degenerate short zone")
        nx = -(v[1] - p[1]) / rv * side
        ny = (v[0] - p[0]) / rv * side
        nu_max = self._ray_exit(mid, (nx, ny), p, v, dguard, ceil_far)
        nu_cap = 0.5 * math.sqrt(max((1.0 + self.w_s) ** 2 - (rv / 2.0) ** 2, 0.0))
        nu = min(nu_max * Q_CELL, nu_cap) * max(share, 0.05)
        for _ in range(90):
            if nu <= self.floor:
                raise self.fail("short placement has no lift room")
            u = (mid[0] + nu * nx, mid[1] + nu * ny)
            if (
                self._region_ok(u, p, v, dguard, ceil_far)
                and 1.0 < dist(p, u) < 1.0 + self.w_s
                and 1.0 < dist(v, u) < 1.0 + self.w_s
            ):
                return u
            nu *= 0.5
        raise self.fail("short placement found no certified position")

    def _ray_ceiling(self, p: Point, probe: Point, v: Point, f: Point) -> float | None:
        """Distance from p along the ray through probe to segment v..f, or
        None when the ray misses it."""
        dx, dy = probe[0] - p[0], probe[1] - p[1]
        ex, ey = f[0] - v[0], f[1] - v[1]
        denom = dx * ey - dy * ex
        if denom == 0.0:
            return None
        t = ((v[0] - p[0]) * ey - (v[1] - p[1]) * ex) / denom
        if t <= 0.0:
            return None
        return t * math.hypot(dx, dy)

    def _ray_exit(
        self,
        start: Point,
        n: Point,
        p: Point,
        v: Point,
        dguard: Point,
        ceil_far: Point,
    ) -> float:
        """Distance from start along direction n to the region boundary."""
        best = math.inf
        sides = [(p, dguard), (v, ceil_far), (p, v)]
        if dguard != ceil_far:
            sides.append((dguard, ceil_far))
        for a, b in sides:
            ex, ey = b[0] - a[0], b[1] - a[1]
            denom = n[0] * ey - n[1] * ex
            if denom == 0.0:
                continue
            t = ((a[0] - start[0]) * ey - (a[1] - start[1]) * ex) / denom
            if t > 0.0:
                best = min(best, t)
        if not math.isfinite(best):
            raise self.fail("open zone boundary")
        return best

    # -- reserved cells ------------------------------------------------------

    def reserve_cells(self, edges: list[Edge]) -> dict[Edge, _Cell]:
        """Clearance-scan a convex quadrilateral cell for each edge.

        Each cell has the full edge segment on its boundary, rises on the
        side with more room, and keeps a Q_CELL fraction of the measured
        clearance to every non-incident structure.  Steep corner walls
        keep the profile fat near the endpoints, which is what the next
        level's near-root helper needs.  Cells emitted earlier in the list
        are obstacles for later ones.
        """
        out: dict[Edge, _Cell] = {}
        allocated: list[list[Point]] = []
        vertex_pt = dict(self.pos)
        vertex_pt[self.x_root] = (0.0, 0.0)
        vertex_pt[self.y_root] = (self.span, 0.0)
        for edge in edges:
            a_id, b_id = edge
            a, b = vertex_pt[a_id], vertex_pt[b_id]
            got = self._scan_quad(a, b, a_id, b_id, allocated)
            if got is None:
                continue
            quad, flipped = got
            ids = (b_id, a_id) if flipped else (a_id, b_id)
            out[edge] = _Cell(poly=quad, ids=ids)
            allocated.append(quad)
        return out

    def _scan_quad(
        self,
        a: Point,
        b: Point,
        a_id: int,
        b_id: int,
        allocated: list[list[Point]],
    ) -> tuple[list[Point], bool] | None:
        base = dist(a, b)
        tx, ty = (b[0] - a[0]) / base, (b[1] - a[1]) / base
        raw = math.inf
        for p, q in self.segments:
            if p in (a, b) or q in (a, b):
                continue
            raw = min(raw, _seg_seg_dist(a, b, p, q))
        for v, pt in self.pos.items():
            if v in (a_id, b_id):
                continue
            raw = min(raw, _seg_point_dist(pt, a, b))
        n_cell = len(self.cell)
        for i in range(n_cell):
            c0, c1 = self.cell[i], self.cell[(i + 1) % n_cell]
            if c0 in (a, b) or c1 in (a, b):
                # boundary walls meeting the base edge: containment of the
                # quad corners inside the convex cell already excludes them
                continue
            raw = min(raw, _seg_seg_dist(a, b, c0, c1))
        for poly in allocated:
            for i in range(len(poly)):
                raw = min(raw, _seg_seg_dist(a, b, poly[i], poly[(i + 1) % len(poly)]))
        fat = raw * Q_CELL
        if not (fat > self.floor):
            return None
        best: tuple[list[Point], bool] | None = None
        best_fat = 0.0
        for side in (1.0, -1.0):
            nx, ny = -ty * side, tx * side
            alpha_a = self._corner_angle(a, b, (tx, ty), (nx, ny))
            alpha_b = self._corner_angle(b, a, (-tx, -ty), (nx, ny))
            if alpha_a <= 0.0 or alpha_b <= 0.0:
                continue
            tan_a = math.tan(min(alpha_a, math.pi / 3.0))
            tan_b = math.tan(min(alpha_b, math.pi / 3.0))
            w_a = min(2.0 * fat / tan_a, 0.2 * base)
            w_b = min(2.0 * fat / tan_b, 0.2 * base)
            f_eff = min(fat, 0.45 * w_a * tan_a, 0.45 * w_b * tan_b)
            if f_eff <= self.floor:
                continue
            c_b = (b[0] - w_b * tx + f_eff * nx, b[1] - w_b * ty + f_eff * ny)
            c_a = (a[0] + w_a * tx + f_eff * nx, a[1] + w_a * ty + f_eff * ny)
            if not (_in_poly_strict(self.cell, c_a) and _in_poly_strict(self.cell, c_b)):
                continue
            if side > 0:
                quad = [a, b, c_b, c_a]
                flipped = False
            else:
                quad = [b, a, c_a, c_b]
                flipped = True
            if f_eff > best_fat:
                best_fat = f_eff
                best = (quad, flipped)
        return best

    def _corner_angle(self, at: Point, opposite: Point, t: Point, n: Point) -> float:
        """Smallest angle above the base direction of any drawn segment
        incident at this corner, on the scan side; pi/2 when free.

        The base segment itself (at -> opposite) is excluded exactly, not
        by its rounded side value.
        """
        best = math.pi / 2.0
        for p, q in self.segments:
            if p == at:
                other = q
            elif q == at:
                other = p
            else:
                continue
            if other == opposite:
                continue
            vx, vy = other[0] - at[0], other[1] - at[1]
            if n[0] * vx + n[1] * vy <= 0.0:
                continue
            ang = math.atan2(abs(t[0] * vy - t[1] * vx), t[0] * vx + t[1] * vy)
            best = min(best, ang)
        return best


# ---------------------------------------------------------------------------
# whole-graph driver


def draw_two_tree(t: TwoTree, cfg: DrawConfig | None = None) -> Drawing:
    """Draws the whole 2-tree; planar, local edge-length ratio < 4+epsilon.

    Components are drawn in increasing layer order, construction order
    within a layer, each inside the convex cell reserved for its root
    edge.  Raises NumericalCollapse when the nesting depth exceeds what
    double precision can certify.
    """
    cfg = cfg or DrawConfig()
    a, b = t.initial
    init_edge = norm_edge(a, b)
    if t.n == 2:
        d = Drawing(coords={a: (0.0, 0.0), b: (1.0, 0.0)})
        d.edge_class[init_edge] = ROOT
        d.vertex_component = {a: -1, b: -1}
        return d
    lay = compute_layers(t)
    comps = extract_tree_components(t, lay)
    span = cfg.span
    rooting: dict[Edge, int] = {}
    for c in comps:
        e = norm_edge(*c.roots)
        rooting[e] = rooting.get(e, 0) + 1
    coords: dict[int, Point] = {a: (0.0, 0.0), b: (span, 0.0)}
    drawing = Drawing(coords=coords)
    drawing.edge_class[init_edge] = ROOT
    drawing.vertex_component = {a: -1, b: -1}
    floor_global = GUARD_RATIO * span
    cells: dict[Edge, _Cell] = {
        init_edge: _Cell(
            poly=[
                coords[a],
                coords[b],
                (span * 0.9, span * 0.45),
                (span * 0.1, span * 0.45),
            ],
            ids=(a, b),
        )
    }
    rooting_set = set(rooting)
    for comp in comps:
        e = norm_edge(*comp.roots)
        cell = cells.get(e)
        if cell is None:
            raise NumericalCollapse(
                f"no usable cell left for edge {e} (component {comp.index}, "
                f"layer {comp.layer})",
                layer=comp.layer,
                component=comp.index,
            )
        x_id, y_id = _choose_roles(comp, cell, coords)
        sigma = 1.0 if (x_id, y_id) == cell.ids else -1.0
        frame = _Frame(coords[x_id], coords[y_id], span, sigma)
        cell_local = _localize_cell(cell, frame, span)
        cd = _ComponentDrawer(
            comp,
            cfg,
            cell_local,
            rooting_set,
            floor_global / frame.k,
            x_id,
            y_id,
        )
        cd.run()
        for v, p in cd.pos.items():
            gp = frame.to_global(p)
            if gp == coords[x_id] or gp == coords[y_id]:
                raise NumericalCollapse(
                    f"vertex {v} collapsed onto a root (component {comp.index})",
                    layer=comp.layer,
                    component=comp.index,
                )
            coords[v] = gp
            drawing.vertex_component[v] = comp.index
        drawing.edge_class.update(cd.classes)
        drawing.component_scale[comp.index] = frame.base_len / (2.0 + cfg.delta)
        drawing.component_cells[comp.index] = list(cell.poly)
        rooting[e] -= 1
        want_residual = rooting[e] > 0
        need = [ed for ed in comp.tree_edges() if ed in rooting_set]
        if want_residual:
            need.append(norm_edge(x_id, y_id))
        got = cd.reserve_cells(need)
        for ed, local_cell in got.items():
            gpoly = [frame.to_global(q) for q in local_cell.poly]
            ids = local_cell.ids
            gpoly[0] = coords[ids[0]]
            gpoly[1] = coords[ids[1]]
            if orientation(gpoly[0], gpoly[1], gpoly[2]) != LEFT:
                # mirrored frames flip orientation; restore the convention
                # that the interior lies left of poly[0] -> poly[1]
                gpoly = [gpoly[1], gpoly[0]] + list(reversed(gpoly[2:]))
                ids = (ids[1], ids[0])
            cells[ed] = _Cell(poly=gpoly, ids=ids)
        if want_residual:
            if norm_edge(x_id, y_id) not in got:
                cells.pop(e, None)
        else:
            cells.pop(e, None)
    return drawing


def _choose_roles(comp: TreeComponent, cell: _Cell, coords: dict[int, Point]) -> tuple[int, int]:
    """Which root plays X (the helper vertex lands near it).

    The helper must be an apex child adjacent to the Y-role root; when
    both sides are available, X goes to the corner where the cell has the
    fatter profile.
    """
    u_id, v_id = comp.roots
    kids = comp.children[comp.apex]
    if not kids:
        return u_id, v_id
    sides = {comp.side_of[c] for c in kids}
    if sides == {u_id}:
        return v_id, u_id
    if sides == {v_id}:
        return u_id, v_id
    pu = _corner_profile(cell, coords[u_id], coords[v_id])
    pv = _corner_profile(cell, coords[v_id], coords[u_id])
    return (u_id, v_id) if pu >= pv else (v_id, u_id)


def _corner_profile(cell: _Cell, corner: Point, other: Point) -> float:
    """Roof height of the cell a small parameter away from a base corner,
    relative to the base length (probe for the helper-vertex room)."""
    base = dist(corner, other)
    probe = (
        corner[0] + 0.02 * (other[0] - corner[0]),
        corner[1] + 0.02 * (other[1] - corner[1]),
    )
    ux, uy = (other[0] - corner[0]) / base, (other[1] - corner[1]) / base
    best = 0.0
    n = len(cell.poly)
    for i in range(1, n):
        a = cell.poly[i]
        b = cell.poly[(i + 1) % n]
        # abscissa along the base through the probe point
        xa = (a[0] - corner[0]) * ux + (a[1] - corner[1]) * uy
        xb = (b[0] - corner[0]) * ux + (b[1] - corner[1]) * uy
        xp = 0.02 * base
        if xa == xb:
            continue
        lo, hi = (xa, xb) if xa < xb else (xb, xa)
        if lo <= xp <= hi:
            ha = abs((a[0] - corner[0]) * (-uy) + (a[1] - corner[1]) * ux)
            hb = abs((b[0] - corner[0]) * (-uy) + (b[1] - corner[1]) * ux)
            tfrac = (xp - xa) / (xb - xa)
            best = max(best, ha + tfrac * (hb - ha))
    return best / base


def _localize_cell(cell: _Cell, frame: _Frame, span: float) -> list[Point]:
    mapped = [frame.to_local(q) for q in cell.poly]
    roof = [p for p in mapped if p[1] > 0.0]
    if not roof:
        raise NumericalCollapse("cell has no interior on the drawing side")
    roof.sort(key=lambda p: -p[0])
    return [(0.0, 0.0), (span, 0.0)] + roof


# ---------------------------------------------------------------------------
# standalone entry points


def _region_to_cell(region: ConvexRegion, frame: _Frame, span: float) -> list[Point]:
    mapped = [frame.to_local(q) for q in region.boundary]
    if sum(p[1] for p in mapped) < 0.0:
        frame.sigma = -frame.sigma
        mapped = [frame.to_local(q) for q in region.boundary]
    roof = [p for p in mapped if p[1] > 0.0]
    if not roof:
        raise PreconditionViolated("region has no room above the base edge")
    roof.sort(key=lambda p: -p[0])
    return [(0.0, 0.0), (span, 0.0)] + roof


def _solo_component() -> TreeComponent:
    return TreeComponent(
        index=-1,
        layer=0,
        roots=(-1, -2),
        apex=-3,
        vertices=[-3],
        parent={},
        depth={-3: 0},
        side_of={},
        children={-3: []},
        weight={-3: 1},
    )


def place_initial(
    x_pt: Point, y_pt: Point, region: ConvexRegion, cfg: DrawConfig | None = None
) -> dict:
    """Positions for the near-root helper X' and the apex Z inside an open
    convex region with X, Y on its boundary; standalone mirror of the
    start of a component drawing."""
    cfg = cfg or DrawConfig()
    span = cfg.span
    frame = _Frame(x_pt, y_pt, span, 1.0)
    cell = _region_to_cell(region, frame, span)
    cd = _ComponentDrawer(
        _solo_component(), cfg, cell, set(), GUARD_RATIO * span, -1, -2
    )
    xp = cd._place_xprime((span, 0.0))
    z = cd._place_apex((0.0, 0.0), (span, 0.0), xp)
    return {"X_prime": frame.to_global(xp), "Z": frame.to_global(z)}


def draw_tree_component(
    comp: TreeComponent,
    x_pt: Point,
    y_pt: Point,
    region: ConvexRegion,
    cfg: DrawConfig | None = None,
) -> dict[int, Point]:
    """Draws one tree-component with its roots pinned to x_pt, y_pt and
    everything else strictly inside the given open convex region; returns
    coordinates for the component vertices."""
    cfg = cfg or DrawConfig()
    span = cfg.span
    frame = _Frame(x_pt, y_pt, span, 1.0)
    cell = _region_to_cell(region, frame, span)
    u, v = comp.roots
    kids = comp.children[comp.apex]
    x_id, y_id = u, v
    if kids and {comp.side_of[c] for c in kids} == {u}:
        x_id, y_id = v, u
        frame = _Frame(y_pt, x_pt, span, 1.0)
        cell = _region_to_cell(region, frame, span)
    cd = _ComponentDrawer(
        comp, cfg, cell, set(), GUARD_RATIO * span, x_id, y_id
    )
    cd.run()
    return {w: frame.to_global(p) for w, p in cd.pos.items()}
