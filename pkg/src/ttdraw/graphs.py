"""2-trees: construction sequences, recognition, generators, JSON I/O.

A 2-tree is built from a single edge by repeatedly adding a vertex adjacent
to both endpoints of an existing edge (a simplicial addition).  The
construction sequence is the canonical serialization: replaying it is the
single source of truth, which makes recognition and generation mutually
testable.  Vertices are dense integer ids 0..n-1.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import MalformedGraph, NotATwoTree, ResourceLimit

Edge = tuple[int, int]

# G_k generation refuses to build more edges than this by default.
DEFAULT_EDGE_CAP = 10**7


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Step:
    """One simplicial addition: ``vertex`` adjacent to edge (a, b)."""

    vertex: int
    a: int
    b: int


@dataclass
class TwoTree:
    """A 2-tree with its construction sequence.

    ``initial`` is the starting edge; each step adds one new vertex and two
    edges.  Replaying the sequence reproduces ``edges`` exactly; validation
    happens eagerly at construction time.
    """

    n: int
    initial: Edge
    steps: list[Step]
    edges: frozenset[Edge] = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise MalformedGraph("a 2-tree needs at least 2 vertices")
        a, b = self.initial
        if a == b:
            raise MalformedGraph("initial edge is a self-loop")
        edges = {norm_edge(a, b)}
        seen = {a, b}
        for st in self.steps:
            if st.vertex in seen:
                raise MalformedGraph(f"vertex {st.vertex} added twice")
            if norm_edge(st.a, st.b) not in edges:
                raise MalformedGraph(
                    f"step parent edge ({st.a},{st.b}) absent at its time"
                )
            seen.add(st.vertex)
            edges.add(norm_edge(st.vertex, st.a))
            edges.add(norm_edge(st.vertex, st.b))
        if seen != set(range(self.n)):
            raise MalformedGraph("construction does not cover 0..n-1 exactly")
        object.__setattr__(self, "edges", frozenset(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def parent_edge(self, v: int) -> Edge | None:
        """The edge ``v`` was simplicial to, or None for initial vertices."""
        for st in self.steps:
            if st.vertex == v:
                return (st.a, st.b)
        return None

    def construction_index(self) -> dict[int, int]:
        """Insertion rank of every vertex (initial endpoints get 0 and 1)."""
        idx = {self.initial[0]: 0, self.initial[1]: 1}
        for i, st in enumerate(self.steps):
            idx[st.vertex] = i + 2
        return idx

    def children_of_edges(self) -> dict[Edge, list[int]]:
        """Vertices added simplicially to each edge, in insertion order."""
        out: dict[Edge, list[int]] = {}
        for st in self.steps:
            out.setdefault(norm_edge(st.a, st.b), []).append(st.vertex)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "initial": [self.initial[0], self.initial[1]],
            "steps": [[s.vertex, s.a, s.b] for s in self.steps],
        }


@dataclass
class LabeledTwoTree:
    """A 2-tree whose vertices and edges carry generation levels.

    Level-0 elements form the starting triangle; each level-(i+1) vertex is
    simplicial to a level-i edge.
    """

    base: TwoTree
    vertex_label: dict[int, int]
    edge_label: dict[Edge, int]

    @property
    def k(self) -> int:
        return max(self.vertex_label.values())

    def edges_of_label(self, i: int) -> list[Edge]:
        return sorted(e for e, lab in self.edge_label.items() if lab == i)

    def to_json(self) -> dict:
        d = self.base.to_json()
        d["vertex_labels"] = [self.vertex_label[v] for v in range(self.base.n)]
        d["edge_labels"] = [
            [u, v, self.edge_label[(u, v)]] for u, v in sorted(self.edge_label)
        ]
        return d


def two_tree_from_json(data: dict) -> TwoTree:
    try:
        n = int(data["n"])
        a, b = data["initial"]
        steps = [Step(int(v), int(x), int(y)) for v, x, y in data["steps"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedGraph(f"bad graph JSON: {exc}") from exc
    return TwoTree(n=n, initial=norm_edge(int(a), int(b)), steps=steps)


def labeled_two_tree_from_json(data: dict) -> LabeledTwoTree:
    base = two_tree_from_json(data)
    try:
        vlabels = {v: int(l) for v, l in enumerate(data["vertex_labels"])}
        elabels = {norm_edge(int(u), int(v)): int(l) for u, v, l in data["edge_labels"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedGraph(f"bad labeled graph JSON: {exc}") from exc
    return LabeledTwoTree(base, vlabels, elabels)


def graph_from_json(data: dict) -> TwoTree:
    """Accepts either a construction-sequence JSON or a raw edge list
    ``{"n": int, "edges": [[a,b], ...]}`` (the latter goes through
    recognition)."""
    if "edges" in data and "steps" not in data:
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedGraph(f"bad edge-list JSON: {exc}") from exc
        return recognize_two_tree(n, edges)
    return two_tree_from_json(data)


def recognize_two_tree(n: int, edge_list: list[tuple[int, int]]) -> TwoTree:
    """Recognizes a 2-tree from a raw edge list and recovers a construction
    sequence by reverse simplicial elimination.

    Repeatedly removes a degree-2 vertex whose two neighbors are adjacent;
    the reversal of the removals is the construction sequence.  Raises
    MalformedGraph for self-loops/multi-edges and NotATwoTree when the
    elimination gets stuck before reaching a single edge.
    """
    if n < 2:
        raise MalformedGraph("need n >= 2")
    seen: set[Edge] = set()
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edge_list:
        if u == v:
            raise MalformedGraph(f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedGraph(f"vertex out of range in edge ({u},{v})")
        e = norm_edge(u, v)
        if e in seen:
            raise MalformedGraph(f"multi-edge {e}")
        seen.add(e)
        adj[u].add(v)
        adj[v].add(u)
    if len(seen) != 2 * n - 3:
        raise NotATwoTree(f"|E|={len(seen)} != 2n-3={2 * n - 3}")

    def reducible(v: int) -> bool:
        if len(adj[v]) != 2:
            return False
        x, y = adj[v]
        return y in adj[x]

    queue = [v for v in range(n) if reducible(v)]
    removed: list[Step] = []
    alive = n
    gone: set[int] = set()
    while queue:
        v = queue.pop()
        if v in gone or not reducible(v):
            continue
        x, y = sorted(adj[v])
        removed.append(Step(v, x, y))
        adj[x].discard(v)
        adj[y].discard(v)
        adj[v].clear()
        gone.add(v)
        alive -= 1
        if alive == 2:
            break
        for w in (x, y):
            if w not in gone and reducible(w):
                queue.append(w)
    if alive != 2:
        raise NotATwoTree("simplicial elimination got stuck")
    rest = [v for v in range(n) if v not in gone]
    initial = norm_edge(rest[0], rest[1])
    tree = TwoTree(n=n, initial=initial, steps=list(reversed(removed)))
    if tree.edges != frozenset(seen):
        raise NotATwoTree("recovered construction does not replay the input")
    return tree


def random_two_tree(n: int, seed: int) -> TwoTree:
    """Random 2-tree on n vertices: each step's parent edge is chosen
    uniformly among the edges existing at that time.  Deterministic for a
    fixed seed."""
    if n < 2:
        raise MalformedGraph("need n >= 2")
    rng = random.Random(seed)
    edges: list[Edge] = [(0, 1)]
    steps: list[Step] = []
    for v in range(2, n):
        a, b = edges[rng.randrange(len(edges))]
        steps.append(Step(v, a, b))
        edges.append(norm_edge(v, a))
        edges.append(norm_edge(v, b))
    return TwoTree(n=n, initial=(0, 1), steps=steps)


def lower_bound_family_sizes(k: int) -> tuple[int, int]:
    """Closed-form vertex and edge counts of the k-th lower-bound graph."""
    vertices = 3 + 5 * (10**k - 1) // 3
    edges = (10 ** (k + 1) - 1) // 3
    return vertices, edges


def generate_lower_bound_family(
    k: int, *, edge_cap: int = DEFAULT_EDGE_CAP
) -> LabeledTwoTree:
    """Builds the labeled family: start from a triangle with label 0, then
    repeatedly add five simplicial vertices to every edge of the previous
    label; new vertices and edges get the next label.
    """
    if k < 0:
        raise ResourceLimit("k must be >= 0")
    _, m_pred = lower_bound_family_sizes(k)
    if m_pred > edge_cap:
        raise ResourceLimit(f"G_{k} would have {m_pred} edges > cap {edge_cap}")
    steps: list[Step] = [Step(2, 0, 1)]
    vlabel = {0: 0, 1: 0, 2: 0}
    elabel: dict[Edge, int] = {(0, 1): 0, (0, 2): 0, (1, 2): 0}
    frontier: list[Edge] = [(0, 1), (0, 2), (1, 2)]
    next_v = 3
    for level in range(1, k + 1):
        new_frontier: list[Edge] = []
        for a, b in frontier:
            for _ in range(5):
                v = next_v
                next_v += 1
                steps.append(Step(v, a, b))
                vlabel[v] = level
                e1, e2 = norm_edge(v, a), norm_edge(v, b)
                elabel[e1] = level
                elabel[e2] = level
                new_frontier.append(e1)
                new_frontier.append(e2)
        frontier = new_frontier
    base = TwoTree(n=next_v, initial=(0, 1), steps=steps)
    return LabeledTwoTree(base, vlabel, elabel)


def dumps_graph(t: TwoTree | LabeledTwoTree) -> str:
    return json.dumps(t.to_json(), sort_keys=True)
