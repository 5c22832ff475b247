"""BFS layers from the initial edge and the tree-components they induce.

Layer i holds the vertices at graph distance i from the initial edge; each
layer induces a forest.  Every connected component C of a layer has a unique
apex: the first vertex of C inserted, simplicial to an edge (u, v) of the
previous layer.  C plus its two roots u, v induces a 2-tree whose layer
vertices form a tree; that tree drives the drawing recursion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import StructureViolation
from .graphs import Edge, TwoTree, norm_edge


@dataclass
class Layering:
    layer_of: dict[int, int]
    layers: list[list[int]]

    def depth(self) -> int:
        return len(self.layers) - 1


@dataclass
class TreeComponent:
    """One connected component of a BFS layer, rooted at (u, v).

    ``parent`` maps each non-apex component vertex to its tree parent (its
    simplicial co-parent inside the component); ``depth`` is the tree
    distance to the apex, whose parity drives the long/short edge classes.
    ``side_of`` maps each non-apex vertex to the unique root it is adjacent
    to.  ``children`` lists tree children in construction order.
    """

    index: int
    layer: int
    roots: tuple[int, int]
    apex: int
    vertices: list[int]
    parent: dict[int, int]
    depth: dict[int, int]
    side_of: dict[int, int]
    children: dict[int, list[int]] = field(default_factory=dict)
    weight: dict[int, int] = field(default_factory=dict)

    def edges(self) -> list[Edge]:
        """All edges of the induced 2-tree on C + roots, root edge first."""
        u, v = self.roots
        out = [norm_edge(u, v)]
        out.append(norm_edge(u, self.apex))
        out.append(norm_edge(v, self.apex))
        for w in self.vertices:
            if w == self.apex:
                continue
            out.append(norm_edge(self.side_of[w], w))
            out.append(norm_edge(self.parent[w], w))
        return out

    def tree_edges(self) -> list[Edge]:
        return [
            norm_edge(w, self.parent[w]) for w in self.vertices if w != self.apex
        ]


def compute_layers(t: TwoTree) -> Layering:
    """Multi-source BFS from both endpoints of the initial edge; O(n)."""
    a, b = t.initial
    adj = t.adjacency()
    layer_of = {a: 0, b: 0}
    layers: list[list[int]] = [[a, b]]
    frontier = deque((a, b))
    while frontier:
        nxt: list[int] = []
        for _ in range(len(frontier)):
            u = frontier.popleft()
            for w in adj[u]:
                if w not in layer_of:
                    layer_of[w] = layer_of[u] + 1
                    nxt.append(w)
        if nxt:
            layers.append(sorted(nxt))
            frontier.extend(layers[-1])
    return Layering(layer_of=layer_of, layers=layers)


def extract_tree_components(t: TwoTree, lay: Layering) -> list[TreeComponent]:
    """One TreeComponent per connected component of each layer i >= 1.

    The apex is the component vertex earliest in the construction sequence;
    its two construction parents are the roots.  Root ordering: the first
    root is the one whose side contains the apex's first tree child (falls
    back to the apex's stored parent-edge order for singleton components).
    Raises StructureViolation if a component vertex is adjacent to neither
    or both roots, which cannot happen for a valid 2-tree input.
    """
    adj = t.adjacency()
    cidx = t.construction_index()
    parent_edge: dict[int, Edge] = {st.vertex: (st.a, st.b) for st in t.steps}

    comps: list[TreeComponent] = []
    assigned: dict[int, int] = {}
    for layer_i in range(1, len(lay.layers)):
        members = sorted(lay.layers[layer_i], key=lambda v: cidx[v])
        layer_set = set(lay.layers[layer_i])
        for start in members:
            if start in assigned:
                continue
            # collect the connected component of the layer containing start
            comp_vertices = [start]
            assigned[start] = len(comps)
            bfs = deque([start])
            while bfs:
                u = bfs.popleft()
                for w in adj[u]:
                    if w in layer_set and w not in assigned:
                        assigned[w] = len(comps)
                        comp_vertices.append(w)
                        bfs.append(w)
            comp_vertices.sort(key=lambda v: cidx[v])
            apex = comp_vertices[0]
            pa, pb = parent_edge[apex]
            if lay.layer_of.get(pa) != layer_i - 1 or lay.layer_of.get(pb) != layer_i - 1:
                raise StructureViolation(
                    f"apex {apex} parents not both in layer {layer_i - 1}"
                )
            comp_set = set(comp_vertices)
            roots = {pa, pb}
            parent: dict[int, int] = {}
            side_of: dict[int, int] = {}
            depth: dict[int, int] = {apex: 0}
            children: dict[int, list[int]] = {w: [] for w in comp_vertices}
            for w in comp_vertices[1:]:
                qa, qb = parent_edge[w]
                in_comp = [q for q in (qa, qb) if q in comp_set]
                in_roots = [q for q in (qa, qb) if q in roots]
                if len(in_comp) != 1 or len(in_roots) != 1:
                    raise StructureViolation(
                        f"vertex {w} is not split root/component as required"
                    )
                root_nbrs = [r for r in roots if r in adj[w]]
                if len(root_nbrs) != 1:
                    raise StructureViolation(
                        f"vertex {w} adjacent to {len(root_nbrs)} roots"
                    )
                parent[w] = in_comp[0]
                side_of[w] = in_roots[0]
                depth[w] = depth[parent[w]] + 1
                children[parent[w]].append(w)
            weight = {w: 1 for w in comp_vertices}
            for w in reversed(comp_vertices):  # children come after parents
                if w != apex:
                    weight[parent[w]] += weight[w]
            # root order: side of the apex's first child decides
            if children[apex]:
                u_root = side_of[children[apex][0]]
                v_root = pb if u_root == pa else pa
            else:
                u_root, v_root = pa, pb
            comps.append(
                TreeComponent(
                    index=len(comps),
                    layer=layer_i,
                    roots=(u_root, v_root),
                    apex=apex,
                    vertices=comp_vertices,
                    parent=parent,
                    depth=depth,
                    side_of=side_of,
                    children=children,
                    weight=weight,
                )
            )
    return comps


def components_to_json(comps: list[TreeComponent]) -> list[dict]:
    out = []
    for c in comps:
        out.append(
            {
                "index": c.index,
                "layer": c.layer,
                "roots": list(c.roots),
                "apex": c.apex,
                "vertices": c.vertices,
                "parent": {str(k): v for k, v in sorted(c.parent.items())},
                "side_of": {str(k): v for k, v in sorted(c.side_of.items())},
            }
        )
    return out
