"""Numerical search for low-ratio drawings.

Planarity-preserving simulated annealing over vertex coordinates, plus an
exhaustive lattice oracle for tiny instances.  The annealer only ever
yields planar drawings: moves that break planarity (checked incrementally
against the moved vertex's incident edges, with a periodic full oracle
re-check) are rejected outright.  Ratio objectives are scale-invariant,
so the search is free to drift in scale.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .drawing import Drawing
from .errors import InvalidInitial, PreconditionViolated, TooLarge
from .geometry import segments_conflict
from .graphs import Edge, TwoTree
from .verify import check_planarity, measure_ratios

FULL_CHECK_EVERY = 1000  # accepted moves between full oracle re-checks


@dataclass
class SearchConfig:
    objective: str = "global_ratio"  # or "local_ratio"
    budget: int = 10_000
    seed: int = 0
    move_scale: float = 0.3
    t_decay: float = 0.999
    restarts: int = 1

    def __post_init__(self):
        if self.budget < 1:
            raise PreconditionViolated("budget must be >= 1")
        if self.move_scale <= 0.0:
            raise PreconditionViolated("move_scale must be positive")
        if self.objective not in ("global_ratio", "local_ratio"):
            raise PreconditionViolated(f"unknown objective {self.objective!r}")


@dataclass
class OptimizeResult:
    best: Drawing
    ratio: float
    trace: list[float] = field(default_factory=list)


class _State:
    """Coordinate array plus cached edge lengths for fast objectives."""

    def __init__(self, t: TwoTree, coords: dict[int, tuple[float, float]]):
        self.t = t
        self.n = t.n
        self.edges = sorted(t.edges)
        self.xy = np.array([coords[v] for v in range(t.n)], dtype=float)
        self.eidx = np.array(self.edges)
        self.incident: list[list[int]] = [[] for _ in range(t.n)]
        for i, (u, v) in enumerate(self.edges):
            self.incident[u].append(i)
            self.incident[v].append(i)
        self.lengths = self._all_lengths()

    def _all_lengths(self) -> np.ndarray:
        d = self.xy[self.eidx[:, 0]] - self.xy[self.eidx[:, 1]]
        return np.hypot(d[:, 0], d[:, 1])

    def refresh(self, v: int) -> None:
        idx = self.incident[v]
        for i in idx:
            u, w = self.edges[i]
            dx = self.xy[u, 0] - self.xy[w, 0]
            dy = self.xy[u, 1] - self.xy[w, 1]
            self.lengths[i] = math.hypot(dx, dy)

    def objective(self, kind: str) -> float:
        if kind == "global_ratio":
            return float(self.lengths.max() / self.lengths.min())
        best = 1.0
        for v in range(self.n):
            idx = self.incident[v]
            ls = self.lengths[idx]
            r = float(ls.max() / ls.min())
            if r > best:
                best = r
        return best

    def coords_dict(self) -> dict[int, tuple[float, float]]:
        return {v: (float(self.xy[v, 0]), float(self.xy[v, 1])) for v in range(self.n)}

    def move_breaks_planarity(self, v: int) -> bool:
        """Checks the moved vertex's incident edges against all others."""
        pv = (float(self.xy[v, 0]), float(self.xy[v, 1]))
        pts = self.xy
        for i in self.incident[v]:
            a, b = self.edges[i]
            other = b if a == v else a
            po = (float(pts[other, 0]), float(pts[other, 1]))
            ax0, ax1 = min(pv[0], po[0]), max(pv[0], po[0])
            ay0, ay1 = min(pv[1], po[1]), max(pv[1], po[1])
            for j, (c, dd) in enumerate(self.edges):
                if j == i or c == v or dd == v:
                    continue
                pc = (float(pts[c, 0]), float(pts[c, 1]))
                pd = (float(pts[dd, 0]), float(pts[dd, 1]))
                if max(pc[0], pd[0]) < ax0 or min(pc[0], pd[0]) > ax1:
                    continue
                if max(pc[1], pd[1]) < ay0 or min(pc[1], pd[1]) > ay1:
                    continue
                if segments_conflict(pv, po, pc, pd):
                    return True
        # the moved vertex must not coincide with or sit on anything
        for w in range(self.n):
            if w != v and pts[w, 0] == pv[0] and pts[w, 1] == pv[1]:
                return True
        return False


def minimize_ratio(t: TwoTree, init: Drawing, cfg: SearchConfig) -> OptimizeResult:
    """Simulated annealing from a planar initial drawing.

    Single-vertex Gaussian moves; planarity-breaking moves are rejected;
    accept/reject by a geometric-decay temperature on the objective.  The
    returned drawing is the best planar one seen, so its ratio never
    exceeds the initial one.  Deterministic for a fixed seed.
    """
    if not check_planarity(init, t):
        raise InvalidInitial("initial drawing failed the planarity oracle")
    best_overall: dict[int, tuple[float, float]] | None = None
    best_ratio = math.inf
    trace: list[float] = []
    for restart in range(max(1, cfg.restarts)):
        rng = random.Random(f"{cfg.seed}:{restart}")
        res = _anneal_once(t, init, cfg, rng)
        trace.extend(res.trace)
        if res.ratio < best_ratio:
            best_ratio = res.ratio
            best_overall = res.best.coords
    assert best_overall is not None
    return OptimizeResult(
        best=Drawing(coords=best_overall), ratio=best_ratio, trace=trace
    )


def _anneal_once(
    t: TwoTree, init: Drawing, cfg: SearchConfig, rng: random.Random
) -> OptimizeResult:
    state = _State(t, init.coords)
    obj = state.objective(cfg.objective)
    t0 = max(obj, 1e-9)
    temp = t0
    best_obj = obj
    best_coords = state.coords_dict()
    trace = [best_obj]
    epoch = max(1, cfg.budget // 100)
    accepted = 0
    scale_floor = 1e-4
    for it in range(cfg.budget):
        v = rng.randrange(t.n)
        sigma = cfg.move_scale * max(temp / t0, scale_floor)
        dx = rng.gauss(0.0, sigma)
        dy = rng.gauss(0.0, sigma)
        old = (state.xy[v, 0], state.xy[v, 1])
        state.xy[v, 0] = old[0] + dx
        state.xy[v, 1] = old[1] + dy
        if state.move_breaks_planarity(v):
            state.xy[v, 0], state.xy[v, 1] = old
            temp *= cfg.t_decay
            continue
        state.refresh(v)
        new_obj = state.objective(cfg.objective)
        delta = new_obj - obj
        if delta <= 0.0 or rng.random() < math.exp(-delta / max(temp, 1e-300)):
            obj = new_obj
            accepted += 1
            if new_obj < best_obj:
                best_obj = new_obj
                best_coords = state.coords_dict()
            if accepted % FULL_CHECK_EVERY == 0:
                coords = state.coords_dict()
                if not check_planarity(Drawing(coords=coords), t):
                    # incremental drift: retreat to the best known drawing
                    state.xy = np.array(
                        [best_coords[w] for w in range(t.n)], dtype=float
                    )
                    state.lengths = state._all_lengths()
                    obj = best_obj
        else:
            state.xy[v, 0], state.xy[v, 1] = old
            state.refresh(v)
        temp *= cfg.t_decay
        if (it + 1) % epoch == 0:
            trace.append(best_obj)
    best = Drawing(coords=best_coords)
    if not check_planarity(best, t):
        raise AssertionError("annealer produced a non-planar drawing")
    return OptimizeResult(best=best, ratio=best_obj, trace=trace)


# ---------------------------------------------------------------------------
# exhaustive lattice oracle


def brute_force_ratio(
    t: TwoTree, grid: int, objective: str = "global_ratio"
) -> OptimizeResult:
    """Certified optimum over injective placements on a grid x grid lattice.

    Enumerates recursively with branch-and-bound on the partial ratio; the
    first vertex is restricted to a fundamental domain of the grid's
    8-fold symmetry, which prunes reflections and rotations without losing
    optima.  Hard caps keep the search tractable.
    """
    if t.n > 6 or grid > 8:
        raise TooLarge("exhaustive search capped at n <= 6, grid <= 8")
    pts = [(float(i), float(j)) for i in range(grid) for j in range(grid)]
    order = [t.initial[0], t.initial[1]] + [s.vertex for s in t.steps]
    edges_at_step: list[list[Edge]] = []
    placed: list[int] = []
    for v in order:
        es = [e for e in t.edges if v in e and all(w in placed or w == v for w in e)]
        edges_at_step.append(es)
        placed.append(v)
    best_ratio = math.inf
    best_coords: dict[int, tuple[float, float]] | None = None
    coords: dict[int, tuple[float, float]] = {}
    half = (grid - 1) / 2.0

    def fundamental(p: tuple[float, float]) -> bool:
        x, y = p
        return x <= half and y <= half and y <= x

    def segs() -> list[tuple]:
        out = []
        for u, v in t.edges:
            if u in coords and v in coords:
                out.append((coords[u], coords[v]))
        return out

    def partial_ratio() -> float:
        ls = [
            math.dist(coords[u], coords[v])
            for u, v in t.edges
            if u in coords and v in coords
        ]
        if not ls:
            return 1.0
        lo = min(ls)
        if lo == 0.0:
            return math.inf
        return max(ls) / lo

    def recurse(i: int) -> None:
        nonlocal best_ratio, best_coords
        if i == len(order):
            r = partial_ratio()
            if r < best_ratio:
                drawn = Drawing(coords=dict(coords))
                if check_planarity(drawn, t):
                    best_ratio = r
                    best_coords = dict(coords)
            return
        v = order[i]
        for p in pts:
            if p in coords.values():
                continue
            if i == 0 and not fundamental(p):
                continue
            coords[v] = p
            ok = True
            for u, w in edges_at_step[i]:
                if math.dist(coords[u], coords[w]) == 0.0:
                    ok = False
                    break
            if ok and partial_ratio() < best_ratio:
                # quick planarity screen on the new edges only
                new_segs = [
                    (coords[u], coords[w]) for u, w in edges_at_step[i]
                ]
                existing = [
                    (coords[u], coords[w])
                    for u, w in t.edges
                    if u in coords and w in coords and (u, w) not in edges_at_step[i]
                ]
                clean = True
                for s1 in new_segs:
                    for s2 in existing:
                        if s1 is s2:
                            continue
                        if segments_conflict(s1[0], s1[1], s2[0], s2[1]):
                            clean = False
                            break
                    if not clean:
                        break
                if clean:
                    recurse(i + 1)
            del coords[v]

    recurse(0)
    if best_coords is None:
        raise TooLarge(f"no planar placement exists on a {grid}x{grid} grid")
    if objective == "local_ratio":
        best_ratio = measure_ratios(Drawing(coords=best_coords), t).local_ratio
    return OptimizeResult(best=Drawing(coords=best_coords), ratio=best_ratio)


def probe_growth(
    k_max: int,
    cfg: SearchConfig,
    *,
    epsilon: float = 0.1,
) -> list[tuple[int, float]]:
    """Best-found global ratios for the lower-bound family, k = 1..k_max.

    Each generation is drawn constructively and then annealed with the
    given budget and restarts.  The numbers are upper bounds on the true
    optimum, recorded as a trend probe, not a proof.
    """
    from .drawing import DrawConfig, draw_two_tree
    from .graphs import generate_lower_bound_family

    if k_max > 3:
        raise TooLarge("growth probe capped at k_max <= 3")
    rows: list[tuple[int, float]] = []
    for k in range(1, k_max + 1):
        g = generate_lower_bound_family(k)
        init = draw_two_tree(g.base, DrawConfig(epsilon=epsilon))
        res = minimize_ratio(g.base, init, cfg)
        rows.append((k, res.ratio))
    return rows
