"""Independent checking: planarity oracle, ratio measurement, certificates.

The planarity check is the oracle every other part of the package is
validated against: an exhaustive pairwise segment test with exact
orientation predicates.  Pair enumeration is pruned by an interval sweep
over bounding boxes (boxes that do not overlap cannot conflict), which
changes the order but not the answer; a literal double loop is kept as a
cross-check for small inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .drawing import Drawing
from .errors import ChainBroken, PreconditionViolated, ZeroLengthEdge
from .geometry import (
    Point,
    dist,
    point_in_triangle,
    segments_conflict,
    triangle_area,
)
from .graphs import Edge, LabeledTwoTree, TwoTree, norm_edge
from .layering import compute_layers, extract_tree_components


@dataclass
class PlanarityReport:
    ok: bool
    crossing: tuple[Edge, Edge] | None = None
    coincident: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class RatioReport:
    global_ratio: float
    local_ratio: float
    global_witness: tuple[Edge, Edge]
    local_witness: tuple[Edge, Edge]


@dataclass
class TriangleChain:
    triangles: list[tuple[int, int, int]]
    levels: list[int]
    areas: list[float]


def _edge_segments(coords: dict[int, Point], edges: list[Edge]):
    segs = []
    for u, v in edges:
        if u not in coords or v not in coords:
            raise PreconditionViolated(f"edge ({u},{v}) has an undrawn endpoint")
        segs.append((coords[u], coords[v], (u, v)))
    return segs


def check_planarity(d: Drawing, t: TwoTree) -> PlanarityReport:
    """Exhaustive pairwise straight-line planarity oracle.

    Edges may share points only at common endpoints; edges sharing an
    endpoint must not overlap collinearly; distinct vertices must not
    coincide.  Never false-negative.
    """
    return check_planarity_edges(d.coords, sorted(t.edges))


def check_planarity_edges(
    coords: dict[int, Point], edges: list[Edge]
) -> PlanarityReport:
    seen: dict[Point, int] = {}
    for v, p in coords.items():
        if p in seen:
            return PlanarityReport(False, coincident=(seen[p], v))
        seen[p] = v
    segs = _edge_segments(coords, edges)
    # sweep over x-intervals: only boxes that overlap in x and y can conflict
    items = []
    for p, q, e in segs:
        x0, x1 = (p[0], q[0]) if p[0] <= q[0] else (q[0], p[0])
        y0, y1 = (p[1], q[1]) if p[1] <= q[1] else (q[1], p[1])
        items.append((x0, x1, y0, y1, p, q, e))
    items.sort(key=lambda it: it[0])
    active: list[tuple] = []
    for it in items:
        x0, x1, y0, y1, p, q, e = it
        keep = []
        for other in active:
            if other[1] >= x0:
                keep.append(other)
        active = keep
        for ox0, ox1, oy0, oy1, op, oq, oe in active:
            if oy1 < y0 or y1 < oy0:
                continue
            if segments_conflict(p, q, op, oq):
                return PlanarityReport(False, crossing=(oe, e))
        active.append(it)
    return PlanarityReport(True)


def check_planarity_bruteforce(
    coords: dict[int, Point], edges: list[Edge]
) -> PlanarityReport:
    """Literal double loop; second implementation for oracle redundancy."""
    seen: dict[Point, int] = {}
    for v, p in coords.items():
        if p in seen:
            return PlanarityReport(False, coincident=(seen[p], v))
        seen[p] = v
    segs = _edge_segments(coords, edges)
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            p, q, e = segs[i]
            r, s, f = segs[j]
            if segments_conflict(p, q, r, s):
                return PlanarityReport(False, crossing=(e, f))
    return PlanarityReport(True)


def measure_ratios(d: Drawing, t: TwoTree | None = None) -> RatioReport:
    """Global and local (adjacent-pair) edge-length ratios with witnesses.

    Ratios are computed as plain length quotients, so they are exactly
    invariant under uniform scaling by powers of two.  An edge paired with
    itself yields ratio 1, so a single-edge drawing has local ratio 1.
    """
    edges = sorted(t.edges) if t is not None else d.edges()
    if not edges:
        raise PreconditionViolated("no edges to measure")
    lengths: dict[Edge, float] = {}
    for e in edges:
        u, v = e
        length = dist(d.coords[u], d.coords[v])
        if length == 0.0:
            raise ZeroLengthEdge(f"edge {e} has zero length")
        lengths[e] = length
    e_max = max(edges, key=lambda e: lengths[e])
    e_min = min(edges, key=lambda e: lengths[e])
    global_ratio = lengths[e_max] / lengths[e_min]
    incident: dict[int, list[Edge]] = {}
    for e in edges:
        incident.setdefault(e[0], []).append(e)
        incident.setdefault(e[1], []).append(e)
    local_ratio = 1.0
    local_witness = (e_min, e_min)
    for v in sorted(incident):
        inc = incident[v]
        hi = max(inc, key=lambda e: lengths[e])
        lo = min(inc, key=lambda e: lengths[e])
        r = lengths[hi] / lengths[lo]
        if r > local_ratio:
            local_ratio = r
            local_witness = (hi, lo)
    return RatioReport(
        global_ratio=global_ratio,
        local_ratio=local_ratio,
        global_witness=(e_max, e_min),
        local_witness=local_witness,
    )


# ---------------------------------------------------------------------------
# per-component audit (classification intervals, parity, root dominance)


@dataclass
class ComponentAudit:
    """Structural audit of one drawn tree-component."""

    index: int
    scale: float
    root_norm: float
    ok_parity: bool
    ok_intervals: bool
    ok_root_longest: bool
    internal_ratio: float
    violations: list[str] = field(default_factory=list)


def audit_components(
    d: Drawing, t: TwoTree, delta: float, tol: float = 1e-9
) -> list[ComponentAudit]:
    """Checks, per tree-component: every non-root edge lies in the interval
    of the class required by the parity of its tree distance to the apex
    (normalized so the root edge has length 2+delta), the root edge is
    strictly the longest, and the internal ratio is at most 2+delta.
    """
    lay = compute_layers(t)
    comps = extract_tree_components(t, lay)
    out = []
    for comp in comps:
        u, v = comp.roots
        root_len = dist(d.coords[u], d.coords[v])
        scale = root_len / (2.0 + delta)
        violations: list[str] = []
        max_other = 0.0
        min_len = root_len
        ok_parity = True
        ok_intervals = True
        for w in comp.vertices:
            anchor = comp.side_of[w] if w != comp.apex else None
            odd = comp.depth[w] % 2 == 1
            pairs: list[tuple[int, bool]] = []
            if w == comp.apex:
                pairs = [(u, False), (v, False)]
            else:
                pairs = [(anchor, odd), (comp.parent[w], False)]
            for nbr, want_long in pairs:
                e = norm_edge(w, nbr)
                ln = dist(d.coords[w], d.coords[nbr]) / scale
                cls = d.edge_class.get(e)
                want = "long" if want_long else "short"
                if cls is not None and cls != want:
                    ok_parity = False
                    violations.append(f"edge {e} classified {cls}, parity says {want}")
                lo, hi = (2.0, 2.0 + delta) if want_long else (1.0, 1.0 + delta)
                if not (lo - tol < ln < hi + tol):
                    ok_intervals = False
                    violations.append(
                        f"edge {e} normalized {ln} outside ({lo}, {hi})"
                    )
                max_other = max(max_other, ln * scale)
                min_len = min(min_len, ln * scale)
        out.append(
            ComponentAudit(
                index=comp.index,
                scale=scale,
                root_norm=2.0 + delta,
                ok_parity=ok_parity,
                ok_intervals=ok_intervals,
                ok_root_longest=root_len > max_other,
                internal_ratio=root_len / min_len if min_len > 0 else math.inf,
                violations=violations,
            )
        )
    return out


# ---------------------------------------------------------------------------
# separating triangles and nested chains


def find_separating_triangles(
    d: Drawing, g: LabeledTwoTree, level: int
) -> list[tuple[int, int, int]]:
    """All triples (u, v, w) where w is a level-``level`` simplicial child
    of edge (u, v) and the triangle strictly contains at least two other
    such children of the same edge.  Strict interior containment with
    exact predicates; boundary contact counts as outside.
    """
    children = g.base.children_of_edges()
    out = []
    for e, kids in sorted(children.items()):
        lev_kids = [w for w in kids if g.vertex_label[w] == level]
        if len(lev_kids) < 3:
            continue
        pu, pv = d.coords[e[0]], d.coords[e[1]]
        for w in lev_kids:
            pw = d.coords[w]
            inside = sum(
                1
                for o in lev_kids
                if o != w and point_in_triangle(d.coords[o], pu, pv, pw)
            )
            if inside >= 2:
                out.append((e[0], e[1], w))
    return out


def _separating_for_edge(
    d: Drawing, g: LabeledTwoTree, e: Edge, level: int
) -> list[tuple[int, int, int]]:
    kids = [
        w
        for w in g.base.children_of_edges().get(norm_edge(*e), [])
        if g.vertex_label[w] == level
    ]
    pu, pv = d.coords[e[0]], d.coords[e[1]]
    found = []
    for w in kids:
        pw = d.coords[w]
        inside = sum(
            1 for o in kids if o != w and point_in_triangle(d.coords[o], pu, pv, pw)
        )
        if inside >= 2:
            found.append((e[0], e[1], w))
    return found


def build_triangle_chain(d: Drawing, g: LabeledTwoTree) -> TriangleChain:
    """Nested separating triangles with areas halving at every step.

    Start from the lowest-indexed level-0 edge; at each level pick a child
    vertex strictly inside the current triangle, take its two incident
    edges of the current level, find separating triangles for both, and
    keep the one with the smaller area.  Raises ChainBroken (with the
    failing level) if no separating triangle is found, which on a planar
    drawing would indicate a bug in the caller's inputs.
    """
    k = g.k
    if k < 1:
        return TriangleChain([], [], [])
    e0 = g.edges_of_label(0)[0]
    cand = _separating_for_edge(d, g, e0, 1)
    if not cand:
        raise ChainBroken("no separating triangle on the starting edge", 1)
    tri = min(
        cand,
        key=lambda tr: triangle_area(
            d.coords[tr[0]], d.coords[tr[1]], d.coords[tr[2]]
        ),
    )
    triangles = [tri]
    areas = [triangle_area(d.coords[tri[0]], d.coords[tri[1]], d.coords[tri[2]])]
    levels = [1]
    children = g.base.children_of_edges()
    for level in range(2, k + 1):
        u, v, w = triangles[-1]
        pu, pv, pw = d.coords[u], d.coords[v], d.coords[w]
        interior = [
            c
            for c in children.get(norm_edge(u, v), [])
            if g.vertex_label[c] == level - 1
            and c != w
            and point_in_triangle(d.coords[c], pu, pv, pw)
        ]
        if not interior:
            raise ChainBroken(f"no interior child at level {level - 1}", level)
        best = None
        best_area = math.inf
        for c in sorted(interior):
            for e in (norm_edge(c, u), norm_edge(c, v)):
                for tri2 in _separating_for_edge(d, g, e, level):
                    area = triangle_area(
                        d.coords[tri2[0]], d.coords[tri2[1]], d.coords[tri2[2]]
                    )
                    if area < best_area:
                        best_area = area
                        best = tri2
        if best is None:
            raise ChainBroken(f"no separating triangle at level {level}", level)
        triangles.append(best)
        areas.append(best_area)
        levels.append(level)
        if best_area > 0.5 * areas[-2] + 1e-12:
            raise ChainBroken(
                f"area halving failed at level {level}: {best_area} > "
                f"{0.5 * areas[-2]}",
                level,
            )
    return TriangleChain(triangles, levels, areas)


def thin_certificate(d: Drawing, g: LabeledTwoTree, r: float) -> dict | None:
    """A separating triangle of area at most 1/4 in a drawing whose edge
    lengths lie in [1, r]; such a triangle is thin since its sides are
    graph edges of length at least 1.

    Requires the generation depth k to be at least 2 + 2*log2(r); returns
    None (not applicable) when it is smaller.
    """
    if r <= 1.0:
        raise PreconditionViolated("r must exceed 1")
    k = g.k
    if k < 2.0 + 2.0 * math.log2(r):
        return None
    chain = build_triangle_chain(d, g)
    for tri, level, area in zip(chain.triangles, chain.levels, chain.areas):
        if area <= 0.25:
            return {"triangle": tri, "level": level, "area": area}
    raise ChainBroken("chain ended above area 1/4 despite sufficient depth", k)


def verification_report(
    d: Drawing, t: TwoTree | None = None, max_local: float | None = None
) -> dict:
    """JSON-ready verification summary used by the command-line front end."""
    edges = sorted(t.edges) if t is not None else d.edges()
    planar = check_planarity_edges(d.coords, edges)
    report: dict = {"planar": planar.ok}
    if not planar.ok:
        if planar.crossing:
            report["crossing"] = [list(planar.crossing[0]), list(planar.crossing[1])]
        if planar.coincident:
            report["coincident"] = list(planar.coincident)
        report["local_ratio"] = None
        report["global_ratio"] = None
        return report
    ratios = measure_ratios(d, t)
    report["local_ratio"] = ratios.local_ratio
    report["global_ratio"] = ratios.global_ratio
    report["witnesses"] = {
        "local": [list(ratios.local_witness[0]), list(ratios.local_witness[1])],
        "global": [list(ratios.global_witness[0]), list(ratios.global_witness[1])],
    }
    if max_local is not None:
        report["within_bound"] = ratios.local_ratio <= max_local
    return report
