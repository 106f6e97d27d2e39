"""Closed metric balls at half-integer radii, rooted isomorphism and the ball metric.

A ball of radius rho keeps every vertex within distance rho of the root and
every edge whose farthest point is within rho: edges uv with
``(depth(u) + depth(v) + 1) / 2 <= rho``.  When both ends have the same depth
(self-loops included) the farthest point is interior to the edge and the
inequality is strict, so the 1/2-ball of any graph is its root with one stub
per edge-end.  Edges cut by the sphere leave *stubs* at their endpoints of
depth strictly less than rho.  All radii are handled internally as integer
half-steps ``h = 2 * rho``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

from .graph import FiniteMultigraph, GraphError

Vertex = Hashable


def half_steps(radius) -> int:
    """Convert a half-integer radius (int, float, Fraction or '5/2') to 2*radius."""
    h, eps = radius_key(radius)
    if eps:
        raise GraphError(f"radius must be a non-negative half-integer, got {radius!r}")
    return h


def _full(du: int, dv: int, h: int, eps: bool) -> bool:
    far = du + dv + 1  # twice the depth of the edge's farthest point
    return far < h or (far == h and (eps or du != dv))


def radius_key(radius) -> tuple[int, bool]:
    """``(h, eps)`` with radius = h/2 exactly (eps False) or in (h/2, (h+1)/2) (eps True).

    Ball contents are constant on each open interval between half-integers.
    """
    r = Fraction(radius.strip()) if isinstance(radius, str) else Fraction(radius)
    if r < 0:
        raise GraphError(f"radius must be non-negative, got {radius!r}")
    two = 2 * r
    h = two.numerator // two.denominator
    return h, two.denominator != 1


@dataclass(frozen=True)
class Ball:
    half: int
    root: Vertex
    depth: dict
    full_edges: tuple  # ((u, v), ...), u == v for loops; one entry per edge
    stubs: dict = field(default_factory=dict)
    eps: bool = False  # radius strictly between half/2 and (half+1)/2

    @property
    def radius(self) -> Fraction:
        """The half-integer radius (the lower end of the interval when ``eps``)."""
        return Fraction(self.half, 2)

    @property
    def key(self) -> tuple[int, bool]:
        return (self.half, self.eps)

    @property
    def vertices(self) -> tuple:
        return tuple(self.depth)

    def rank(self) -> int:
        """Betti number of the ball (stubs carry no cycles); balls are connected."""
        return len(self.full_edges) - len(self.depth) + 1

    def total_stubs(self) -> int:
        return sum(self.stubs.values())

    def to_graph(self, name: str = "ball") -> FiniteMultigraph:
        return FiniteMultigraph(self.depth, {i: uv for i, uv in enumerate(self.full_edges)},
                                root=self.root, name=name)

    def truncate(self, radius) -> "Ball":
        """Restrict to a smaller radius without touching the graph again."""
        h, eps = radius_key(radius)
        if (h, eps) > self.key:
            raise GraphError("cannot truncate to a larger radius")

        def cut(x):
            d2 = 2 * self.depth[x]
            return d2 < h or (eps and d2 == h)

        depth = {v: d for v, d in self.depth.items() if 2 * d <= h}
        full, stubs = [], Counter()
        for u, v in self.full_edges:
            if _full(self.depth[u], self.depth[v], h, eps):
                full.append((u, v))
            else:
                for x in ((u, u) if u == v else (u, v)):
                    if cut(x):
                        stubs[x] += 1
        for x, s in self.stubs.items():
            if cut(x):
                stubs[x] += s
        return Ball(h, self.root, depth, tuple(full), dict(stubs), eps)

    def relabel(self, mapping) -> "Ball":
        m = mapping if callable(mapping) else mapping.__getitem__
        return Ball(self.half, m(self.root), {m(v): d for v, d in self.depth.items()},
                    tuple((m(u), m(v)) for u, v in self.full_edges),
                    {m(v): s for v, s in self.stubs.items()}, self.eps)

    def to_dot(self, name: str = "ball") -> str:
        lines = [f'graph "{name}" {{']
        q = lambda x: '"' + str(x).replace('"', '\\"') + '"'
        for v, d in self.depth.items():
            shape = "doublecircle" if v == self.root else "circle"
            lines.append(f"  {q(v)} [shape={shape}, label={q(f'{v} @{d}')}];")
        for u, v in self.full_edges:
            lines.append(f"  {q(u)} -- {q(v)};")
        for v, s in self.stubs.items():
            for j in range(s):
                stub = q(f"stub:{v}:{j}")
                lines.append(f"  {stub} [shape=point, width=0.05];")
                lines.append(f"  {q(v)} -- {stub} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def ball(g, radius) -> Ball:
    """The closed ball of the given radius around ``g.root``.

    Any non-negative real radius is accepted; between half-integers the ball
    sees the stubs of its outermost vertices but no additional full edges.
    """
    h, eps = radius_key(radius)
    root = g.root
    depth = {root: 0}
    queue = deque([root])
    seen_edges = set()
    full = []
    stubs: Counter = Counter()
    while queue:
        x = queue.popleft()
        d = depth[x]
        if 2 * d > h or (2 * d == h and not eps):
            continue
        for inc in g.incident(x):
            if inc.loop:
                if _full(d, d, h, eps):
                    full.append((x, x))
                else:
                    stubs[x] += 2
                continue
            y = inc.other
            dy = depth.get(y)
            if dy is None:
                dy = d + 1
                if 2 * dy <= h:
                    depth[y] = dy
                    queue.append(y)
            if _full(d, dy, h, eps):
                if inc.edge not in seen_edges:
                    seen_edges.add(inc.edge)
                    full.append((x, y))
            else:
                stubs[x] += 1
    return Ball(h, root, depth, tuple(full), dict(stubs), eps)


# ------------------------------------------------------------------ structure

class _Shape:
    """Adjacency view of a ball with edge ids quotiented out."""

    def __init__(self, b: Ball):
        self.b = b
        self.adj: dict = {v: Counter() for v in b.depth}
        self.loops: Counter = Counter()
        for u, v in b.full_edges:
            if u == v:
                self.loops[u] += 1
            else:
                self.adj[u][v] += 1
                self.adj[v][u] += 1

    def base_label(self, v) -> tuple:
        return (self.b.depth[v], self.b.stubs.get(v, 0), self.loops[v],
                sum(self.adj[v].values()))


def _refine(vertices, adj, colors: dict) -> dict:
    """Colour refinement by neighbour colours with multiplicities; canonical ranks."""
    ncol = len(set(colors.values()))
    while True:
        sig = {v: (colors[v], tuple(sorted((colors[u], m) for u, m in adj[v].items())))
               for v in vertices}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in vertices}
        if len(ranks) == ncol:
            return new
        colors, ncol = new, len(ranks)


def rooted_isomorphic(b1: Ball, b2: Ball):
    """A root-preserving isomorphism ``b1 -> b2`` as a dict, or None.

    Joint colour refinement on both balls, then backtracking in BFS order.
    """
    if b1.key != b2.key:
        raise GraphError(f"radius mismatch: {b1.key} vs {b2.key}")
    if (len(b1.depth) != len(b2.depth) or len(b1.full_edges) != len(b2.full_edges)
            or b1.total_stubs() != b2.total_stubs()):
        return None
    s1, s2 = _Shape(b1), _Shape(b2)
    verts = [(0, v) for v in b1.depth] + [(1, v) for v in b2.depth]
    adj = {}
    for tag, s in ((0, s1), (1, s2)):
        for v, nb in s.adj.items():
            adj[(tag, v)] = {(tag, u): m for u, m in nb.items()}
    base = {}
    for tag, s, b in ((0, s1, b1), (1, s2, b2)):
        for v in b.depth:
            base[(tag, v)] = (v == b.root,) + s.base_label(v)
    labels = sorted(set(base.values()))
    colors = _refine(verts, adj, {v: labels.index(base[v]) for v in verts})
    hist1 = Counter(colors[(0, v)] for v in b1.depth)
    hist2 = Counter(colors[(1, v)] for v in b2.depth)
    if hist1 != hist2:
        return None
    by_color: dict = {}
    for v in b2.depth:
        by_color.setdefault(colors[(1, v)], []).append(v)
    order = list(b1.depth)  # BFS order from ball()
    phi: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        mapped_nb = [(u, m) for u, m in s1.adj[v].items() if u in phi]
        for c in by_color[colors[(0, v)]]:
            if c in used:
                continue
            if any(s2.adj[c].get(phi[u], 0) != m for u, m in mapped_nb):
                continue
            if sum(1 for u in s2.adj[c] if u in used) != len(mapped_nb):
                continue
            phi[v] = c
            used.add(c)
            if extend(i + 1):
                return True
            del phi[v]
            used.discard(c)
        return False

    return dict(phi) if extend(0) else None


def canonical_code(b: Ball) -> bytes:
    """A byte string equal for two balls exactly when they are rooted-isomorphic.

    Pendant trees (non-root vertices with one distinct neighbour) are folded
    into their attachment vertex bottom-up; the remaining core is canonised by
    individualisation-refinement, taking the least leaf code and pruning
    children that lie in one orbit of the automorphisms found so far.
    """
    s = _Shape(b)
    label = {v: "%d.%d.%d" % (b.depth[v], b.stubs.get(v, 0), s.loops[v]) for v in b.depth}
    children: dict = {v: [] for v in b.depth}
    nbrs = {v: set(s.adj[v]) for v in b.depth}
    alive = set(b.depth)
    queue = deque(v for v in b.depth if v != b.root and len(nbrs[v]) == 1)
    while queue:
        v = queue.popleft()
        if v not in alive or len(nbrs[v]) != 1:
            continue
        (u,) = nbrs[v]
        code = "(%s[%s])" % (label[v], ",".join(sorted(children[v])))
        children[u].append("%d*%s" % (s.adj[v][u], code))
        alive.discard(v)
        nbrs[u].discard(v)
        if u != b.root and len(nbrs[u]) == 1:
            queue.append(u)
    core = [v for v in b.depth if v in alive]
    core_label = {v: ("R" if v == b.root else "N") + "%s[%s]" % (label[v], ",".join(sorted(children[v])))
                  for v in core}
    header = "r%d%s;" % (b.half, "+" if b.eps else "")
    if len(core) == 1:
        return (header + "T" + core_label[core[0]]).encode()
    adj = {v: {u: m for u, m in s.adj[v].items() if u in alive} for v in core}
    labels = sorted(set(core_label.values()))
    lindex = {l: i for i, l in enumerate(labels)}
    start = _refine(core, adj, {v: lindex[core_label[v]] for v in core})
    best = _IRSearch(core, adj, core_label).run(start)
    return (header + "C" + best).encode()


class _IRSearch:
    def __init__(self, core, adj, core_label):
        self.core = core
        self.adj = adj
        self.core_label = core_label
        self.best = None
        self.best_perm = None
        self.generators: list[dict] = []

    def leaf_code(self, colors) -> tuple[str, dict]:
        order = sorted(self.core, key=colors.__getitem__)
        pos = {v: i for i, v in enumerate(order)}
        parts = [self.core_label[v] for v in order]
        edges = sorted((min(pos[u], pos[v]), max(pos[u], pos[v]), m)
                       for v in order for u, m in self.adj[v].items() if pos[u] > pos[v])
        code = "|".join(parts) + "#" + ";".join("%d-%d*%d" % e for e in edges)
        return code, pos

    def run(self, colors) -> str:
        self.search(colors, [])
        return self.best

    def search(self, colors, prefix):
        cells: dict = {}
        for v in self.core:
            cells.setdefault(colors[v], []).append(v)
        if len(cells) == len(self.core):
            code, pos = self.leaf_code(colors)
            if self.best is None or code < self.best:
                self.best, self.best_perm = code, pos
            elif code == self.best:
                inv = {i: v for v, i in self.best_perm.items()}
                gen = {v: inv[pos[v]] for v in self.core}
                if any(k != x for k, x in gen.items()):
                    self.generators.append(gen)
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        cell = sorted(cells[target], key=lambda v: self.core.index(v))
        done: list = []
        for v in cell:
            if done and self._same_orbit(v, done, prefix):
                continue
            done.append(v)
            ind = {u: (2 * colors[u] + (0 if u == v else 1)) for u in self.core}
            self.search(_refine(self.core, self.adj, ind), prefix + [v])

    def _same_orbit(self, v, done, prefix) -> bool:
        gens = [g for g in self.generators if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for g in gens:
            for a, b in g.items():
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        rv = find(v)
        return any(find(u) == rv for u in done)


# ------------------------------------------------------------------- distance

@dataclass(frozen=True)
class DyadicDistance:
    """A distance value 0 or 2^(-m/2), exact or an upper bound.

    ``half_exponent`` is m.  ``kind`` is ``"exact"``, ``"upper"`` or ``"zero"``.
    """

    kind: str
    half_exponent: int = 0

    @classmethod
    def zero(cls) -> "DyadicDistance":
        return cls("zero", 0)

    @property
    def value(self) -> float:
        return 0.0 if self.kind == "zero" else 2.0 ** (-self.half_exponent / 2)

    @property
    def is_exact(self) -> bool:
        return self.kind in ("exact", "zero")

    def _key(self):
        # larger key = smaller distance
        return float("inf") if self.kind == "zero" else self.half_exponent

    def __le__(self, other: "DyadicDistance") -> bool:
        return self._key() >= other._key()

    def __lt__(self, other: "DyadicDistance") -> bool:
        return self._key() > other._key()

    def power(self) -> str:
        m = self.half_exponent
        return "2^-%d" % (m // 2) if m % 2 == 0 else "2^-%d/2" % m

    def __str__(self) -> str:
        if self.kind == "zero":
            return "zero 0"
        return f"{self.kind} {self.power()}"


def _covers_everything(g, b: Ball) -> bool:
    if not isinstance(g, FiniteMultigraph) or b.stubs:
        return False
    comp = g.root_component()
    return len(comp.vertices) == len(b.depth) and len(comp.edges) == len(b.full_edges)


def distance(g1, g2, max_half_steps: int) -> DyadicDistance:
    """Ball-metric distance, scanning radii 0, 1/2, 1, ... up to the budget.

    Returns ``exact`` at the first failing radius, ``zero`` when both inputs
    are finite graphs fully covered by isomorphic balls, else ``upper``.
    """
    if max_half_steps < 0:
        raise GraphError("budget must be non-negative")
    b1 = ball(g1, Fraction(max_half_steps, 2))
    b2 = ball(g2, Fraction(max_half_steps, 2))
    for h in range(max_half_steps + 1):
        t1, t2 = b1.truncate(Fraction(h, 2)), b2.truncate(Fraction(h, 2))
        if canonical_code(t1) != canonical_code(t2):
            return DyadicDistance("exact", max(h - 1, 0))
        if _covers_everything(g1, t1) and _covers_everything(g2, t2):
            return DyadicDistance.zero()
    return DyadicDistance("upper", max_half_steps)


def in_basic_open(gamma, radius, delta) -> bool:
    """Is ``delta`` in the basic clopen set of graphs whose ``radius``-ball matches ``gamma``'s?"""
    return canonical_code(ball(gamma, radius)) == canonical_code(ball(delta, radius))
