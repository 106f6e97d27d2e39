"""Finite-depth views of the end space: component trees, loop profiles, U_n / V_n checks.

Level i of a component tree is the set of connected components of the
subgraph of the window induced on vertices of depth >= i, i.e. the graph with
the open ball of radius i removed.  The window of horizon R keeps every vertex
of depth <= R and every edge between them; edges leaving it are open stubs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .balls import ball
from .graph import GraphError


@dataclass
class ComponentNode:
    level: int
    index: int
    parent: int | None
    vertex_count: int
    edge_count: int
    open_stubs: int
    representative: object
    new_cycles: int = 0
    children: list = field(default_factory=list)

    @property
    def betti(self) -> int:
        return self.edge_count - self.vertex_count + 1

    @property
    def persistent(self) -> bool:
        """Does the component reach the window boundary (so may continue past R)?"""
        return self.open_stubs > 0


@dataclass
class ComponentTree:
    horizon: int
    r_max: int
    levels: list  # levels[i] = list of ComponentNode
    beyond: list = field(default_factory=list)  # level r_max + 1 when it fits the window

    def persistent(self, level: int) -> list:
        return [n for n in self.levels[level] if n.persistent]

    def persistent_counts(self) -> list[int]:
        return [len(self.persistent(i)) for i in range(len(self.levels))]

    def counts(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def to_json(self) -> str:
        data = {
            "horizon": self.horizon,
            "r_max": self.r_max,
            "levels": [[{
                "index": n.index, "parent": n.parent, "vertices": n.vertex_count,
                "edges": n.edge_count, "betti": n.betti, "new_cycles": n.new_cycles,
                "open_stubs": n.open_stubs, "persistent": n.persistent,
                "representative": str(n.representative),
            } for n in lv] for lv in self.levels],
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def to_dot(self) -> str:
        out = ['digraph "components" {']
        for lv in self.levels:
            for n in lv:
                style = "solid" if n.persistent else "dashed"
                out.append(f'  "L{n.level}.{n.index}" [style={style}, label="L{n.level}.{n.index}\\n'
                           f'v={n.vertex_count} b={n.betti} +{n.new_cycles} stubs={n.open_stubs}"];')
                if n.parent is not None:
                    out.append(f'  "L{n.level - 1}.{n.parent}" -> "L{n.level}.{n.index}";')
        out.append("}")
        return "\n".join(out) + "\n"


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}
        self.verts: dict = {}
        self.edges: dict = {}
        self.stubs: dict = {}
        self.first: dict = {}  # smallest BFS position in the class

    def add(self, x, pos: int, stubs: int):
        self.parent[x] = x
        self.verts[x], self.edges[x], self.stubs[x], self.first[x] = 1, 0, stubs, pos

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union_edge(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.edges[ra] += 1
            return
        if self.verts[ra] < self.verts[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.verts[ra] += self.verts[rb]
        self.edges[ra] += self.edges[rb] + 1
        self.stubs[ra] += self.stubs[rb]
        self.first[ra] = min(self.first[ra], self.first[rb])


def window(g, horizon: int):
    """Everything at depth <= ``horizon``: sphere edges included, leaving edges as stubs."""
    from fractions import Fraction
    return ball(g, Fraction(4 * horizon + 3, 4))


def component_tree(g, r_max: int, horizon: int) -> ComponentTree:
    """Components of the window minus the open balls of radius 0..r_max."""
    if not 0 <= r_max <= horizon:
        raise GraphError("need 0 <= r_max <= horizon")
    b = window(g, horizon)
    order = list(b.depth)  # BFS order
    pos = {v: i for i, v in enumerate(order)}
    by_depth: dict = {}
    for v in order:
        by_depth.setdefault(b.depth[v], []).append(v)
    # edges grouped by the smaller endpoint depth
    edges_at: dict = {}
    for u, v in b.full_edges:
        edges_at.setdefault(min(b.depth[u], b.depth[v]), []).append((u, v))
    top = r_max + 1 if r_max + 1 <= horizon else r_max
    uf = _UnionFind()
    snapshots: dict = {}
    for d in range(horizon, -1, -1):
        for v in by_depth.get(d, ()):
            uf.add(v, pos[v], b.stubs.get(v, 0))
        for u, v in edges_at.get(d, ()):
            uf.union_edge(u, v)
        if d <= top:
            comps: dict = {}
            for dd in range(d, horizon + 1):
                for v in by_depth.get(dd, ()):
                    r = uf.find(v)
                    if r not in comps:
                        comps[r] = ComponentNode(d, -1, None, uf.verts[r], uf.edges[r],
                                                 uf.stubs[r], order[uf.first[r]])
            nodes = sorted(comps.values(), key=lambda n: pos[n.representative])
            for i, n in enumerate(nodes):
                n.index = i
            snapshots[d] = (nodes, {r: n.index for r, n in comps.items()},
                            {v: uf.find(v) for dd in range(d, horizon + 1)
                             for v in by_depth.get(dd, ())})
    levels = []
    for d in range(0, top + 1):
        nodes, _, _ = snapshots[d]
        if d > 0:
            _, index_of, find_of = snapshots[d - 1]
            for n in nodes:
                p = index_of[find_of[n.representative]]
                n.parent = p
                levels[d - 1][p].children.append(n.index)
        levels.append(nodes)
    for d in range(0, r_max + 1):
        for n in levels[d]:
            inherited = 0
            if d + 1 <= top:
                inherited = sum(levels[d + 1][c].betti for c in n.children
                                if levels[d + 1][c].persistent)
            n.new_cycles = n.betti - inherited
    beyond = levels[r_max + 1] if top > r_max else []
    return ComponentTree(horizon, r_max, levels[: r_max + 1], beyond)


@dataclass
class Branch:
    path: list  # node indices, one per level
    cumulative: list  # cumulative new_cycles along the path
    tail_rank: int  # betti of the last node
    persistent: bool


def loop_accumulation_profile(t: ComponentTree) -> list[Branch]:
    """Cumulative new-cycle counts along every root-to-leaf branch of the tree."""
    out = []

    def walk(level, idx, path, cum):
        n = t.levels[level][idx]
        path = path + [idx]
        cum = cum + [(cum[-1] if cum else 0) + n.new_cycles]
        kids = n.children if level + 1 < len(t.levels) else []
        if not kids:
            out.append(Branch(path, cum, n.betti, n.persistent))
            return
        for c in kids:
            walk(level + 1, c, path, cum)

    for i in range(len(t.levels[0])):
        walk(0, i, [], [])
    return out


def rank_lower_bound(g, r) -> int:
    """Rank of the radius-r ball; nondecreasing in r, converging to the rank of g."""
    return ball(g, r).rank()


def in_U_n(g, n: int, horizon: int) -> bool:
    """Certified membership in U_n: the radius-``horizon`` ball already has rank >= n."""
    return rank_lower_bound(g, horizon) >= n


def level_components(g, n: int, horizon: int, win=None) -> tuple:
    """``(window ball, components of the depth >= n part as vertex lists)``.

    ``win`` may be a precomputed window of a larger horizon; it is cut down
    to ``horizon`` (vertices and the edges between them).
    """
    if n > horizon:
        raise GraphError("need n <= horizon")
    b = window(g, horizon) if win is None else win
    uf = _UnionFind()
    order = [v for v in b.depth if n <= b.depth[v] <= horizon]
    for i, v in enumerate(order):
        uf.add(v, i, 0)
    for u, v in b.full_edges:
        if n <= b.depth[u] <= horizon and n <= b.depth[v] <= horizon:
            uf.union_edge(u, v)
    comps: dict = {}
    for v in order:
        comps.setdefault(uf.find(v), []).append(v)
    return b, list(comps.values())


def in_V_n(g, n: int, horizon: int, win=None) -> bool:
    """Are all depth-n vertices joined by paths that stay at depth >= n inside the window?

    True is a certificate; False only says "not witnessed by this horizon".
    """
    b, comps = level_components(g, n, horizon, win)
    sphere = [v for v, d in b.depth.items() if d == n]
    if len(sphere) <= 1:
        return True
    return sum(1 for c in comps if any(b.depth[v] == n for v in c)) == 1


def v_n_witness_radius(g, n: int, max_horizon: int):
    """Smallest horizon in n..max_horizon certifying V_n, or None."""
    if n > max_horizon:
        return None
    win = window(g, max_horizon)
    for R in range(n, max_horizon + 1):
        if in_V_n(g, n, R, win):
            return R
    return None
