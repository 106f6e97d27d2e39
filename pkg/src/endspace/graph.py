"""Rooted multigraphs: explicit finite graphs, lazy oracles and local surgery.

Both carriers expose the same read protocol: a ``root`` attribute and an
``incident(v)`` method returning a tuple of :class:`Incidence` records.  A
self-loop is listed once, with ``loop=True``, and contributes two to the degree.
Everything downstream (balls, ends, reductions) only uses that protocol.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import count
from typing import Any, Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence

Vertex = Hashable
EdgeId = Hashable


class GraphError(ValueError):
    """Raised for malformed graphs or invalid surgery requests."""


class UnknownVertexError(GraphError, KeyError):
    pass


class UnknownEdgeError(GraphError, KeyError):
    pass


class Incidence(NamedTuple):
    edge: EdgeId
    other: Vertex
    loop: bool


def _ends(incidences: Iterable[Incidence]) -> int:
    return sum(2 if inc.loop else 1 for inc in incidences)


class FiniteMultigraph:
    """Immutable finite multigraph with optional root.

    Edges map an id to an unordered endpoint pair; ``(u, u)`` is a self-loop.
    Vertex and edge insertion order is kept and drives every iteration order.
    """

    __slots__ = ("_vertices", "_edges", "_root", "_name", "_incident", "metadata")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        edges: Mapping[EdgeId, tuple[Vertex, Vertex]] | Iterable[tuple[EdgeId, Vertex, Vertex]],
        root: Vertex | None = None,
        name: str = "g",
        metadata: Mapping[str, Any] | None = None,
    ):
        verts = tuple(dict.fromkeys(vertices))
        vset = set(verts)
        if isinstance(edges, Mapping):
            items = [(e, uv[0], uv[1]) for e, uv in edges.items()]
        else:
            items = [tuple(t) for t in edges]
        emap: dict[EdgeId, tuple[Vertex, Vertex]] = {}
        for e, u, v in items:
            if e in emap:
                raise GraphError(f"duplicate edge id {e!r}")
            for x in (u, v):
                if x not in vset:
                    raise GraphError(f"edge {e!r} has unknown endpoint {x!r}")
            emap[e] = (u, v)
        if root is not None and root not in vset:
            raise UnknownVertexError(root)
        self._vertices = verts
        self._edges = emap
        self._root = root
        self._name = name
        self._incident: dict[Vertex, tuple[Incidence, ...]] | None = None
        self.metadata = dict(metadata or {})

    @classmethod
    def from_edge_list(cls, pairs: Iterable[tuple[Vertex, Vertex]], root: Vertex | None = None,
                       vertices: Iterable[Vertex] = (), **kw) -> "FiniteMultigraph":
        """Build from endpoint pairs; edge ids are 0, 1, 2, ..."""
        pairs = list(pairs)
        verts = list(vertices)
        for u, v in pairs:
            verts.extend((u, v))
        if root is not None:
            verts.insert(0, root)
        return cls(verts, {i: uv for i, uv in enumerate(pairs)}, root=root, **kw)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> dict[EdgeId, tuple[Vertex, Vertex]]:
        return dict(self._edges)

    @property
    def root(self) -> Vertex | None:
        return self._root

    @property
    def name(self) -> str:
        return self._name

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._index()

    def __repr__(self) -> str:
        return (f"FiniteMultigraph({self._name!r}, |V|={len(self._vertices)}, "
                f"|E|={len(self._edges)}, root={self._root!r})")

    def endpoints(self, e: EdgeId) -> tuple[Vertex, Vertex]:
        try:
            return self._edges[e]
        except KeyError:
            raise UnknownEdgeError(e) from None

    def _index(self) -> dict[Vertex, tuple[Incidence, ...]]:
        if self._incident is None:
            acc: dict[Vertex, list[Incidence]] = {v: [] for v in self._vertices}
            for e, (u, v) in self._edges.items():
                if u == v:
                    acc[u].append(Incidence(e, u, True))
                else:
                    acc[u].append(Incidence(e, v, False))
                    acc[v].append(Incidence(e, u, False))
            self._incident = {v: tuple(lst) for v, lst in acc.items()}
        return self._incident

    def incident(self, v: Vertex) -> tuple[Incidence, ...]:
        try:
            return self._index()[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def degree(self, v: Vertex) -> int:
        return _ends(self.incident(v))

    def with_root(self, root: Vertex) -> "FiniteMultigraph":
        return FiniteMultigraph(self._vertices, self._edges, root=root, name=self._name,
                                metadata=self.metadata)

    def renamed(self, name: str) -> "FiniteMultigraph":
        return FiniteMultigraph(self._vertices, self._edges, root=self._root, name=name,
                                metadata=self.metadata)

    def components(self) -> list[list[Vertex]]:
        seen: set[Vertex] = set()
        out = []
        for s in self._vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for inc in self.incident(x):
                    if inc.other not in seen:
                        seen.add(inc.other)
                        comp.append(inc.other)
                        queue.append(inc.other)
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def root_component(self) -> "FiniteMultigraph":
        """The connected component of the root, as a graph of its own."""
        if self._root is None:
            raise GraphError("graph has no root")
        keep = set(next(c for c in self.components() if self._root in c))
        return FiniteMultigraph(
            [v for v in self._vertices if v in keep],
            {e: uv for e, uv in self._edges.items() if uv[0] in keep},
            root=self._root, name=self._name, metadata=self.metadata,
        )


class GraphOracle:
    """Lazy, locally finite, connected rooted graph.

    Subclasses implement :meth:`incident`.  Answers must be deterministic and
    symmetric; ``metadata`` may carry a ``"descriptor"`` (certified PHE type)
    and free-form provenance.
    """

    root: Vertex

    def __init__(self, root: Vertex, metadata: Mapping[str, Any] | None = None):
        self.root = root
        self.metadata = dict(metadata or {})

    def incident(self, v: Vertex) -> tuple[Incidence, ...]:
        raise NotImplementedError

    def degree(self, v: Vertex) -> int:
        return _ends(self.incident(v))

    def __repr__(self) -> str:
        name = self.metadata.get("name", type(self).__name__)
        return f"<{name} oracle root={self.root!r}>"


class FunctionOracle(GraphOracle):
    """Oracle backed by a pure function ``v -> iterable of (edge, other, loop)``."""

    def __init__(self, root: Vertex, fn: Callable[[Vertex], Iterable[tuple]],
                 metadata: Mapping[str, Any] | None = None, cache: bool = True):
        super().__init__(root, metadata)
        def answer(v):
            return tuple(Incidence(*t) for t in fn(v))
        self._answer = lru_cache(maxsize=1 << 16)(answer) if cache else answer

    def incident(self, v: Vertex) -> tuple[Incidence, ...]:
        return self._answer(v)


class PatchedOracle(GraphOracle):
    """A base graph with finitely many edges removed and vertices/edges added.

    This is how local surgery is applied to an infinite graph: nothing is
    materialized, answers are rewritten on the fly.
    """

    def __init__(self, base, removed: Iterable[EdgeId] = (),
                 added_vertices: Iterable[Vertex] = (),
                 added_edges: Mapping[EdgeId, tuple[Vertex, Vertex]] | None = None,
                 metadata: Mapping[str, Any] | None = None):
        super().__init__(base.root, metadata if metadata is not None else {})
        self.base = base
        self.removed = frozenset(removed)
        self.added_vertices = tuple(added_vertices)
        self.added_edges = dict(added_edges or {})
        extra: dict[Vertex, list[Incidence]] = {v: [] for v in self.added_vertices}
        for e, (u, v) in self.added_edges.items():
            if u == v:
                extra.setdefault(u, []).append(Incidence(e, u, True))
            else:
                extra.setdefault(u, []).append(Incidence(e, v, False))
                extra.setdefault(v, []).append(Incidence(e, u, False))
        self._extra = {v: tuple(lst) for v, lst in extra.items()}
        self._new = frozenset(self.added_vertices)

    def incident(self, v: Vertex) -> tuple[Incidence, ...]:
        if v in self._new:
            return self._extra[v]
        kept = tuple(inc for inc in self.base.incident(v) if inc.edge not in self.removed)
        return kept + self._extra.get(v, ())


def degree(g, v: Vertex) -> int:
    """Number of incident edge-ends; a self-loop counts twice."""
    return _ends(g.incident(v))


def rank(g: FiniteMultigraph) -> int:
    """First Betti number |E| - |V| + #components."""
    return len(g.edges) - len(g.vertices) + len(g.components())


def _fresh(taken, start: int = 0):
    for i in count(max(start, 0)):
        if i not in taken:
            return i


def _as_mutable(g: FiniteMultigraph):
    return list(g.vertices), dict(g._edges)


def _rebuild(g: FiniteMultigraph, verts, edges) -> FiniteMultigraph:
    return FiniteMultigraph(verts, edges, root=g.root, name=g.name, metadata=g.metadata)


def _endpoints_in_oracle(g, e: EdgeId, at: Vertex | None) -> tuple[Vertex, Vertex]:
    if at is None:
        raise GraphError("oracle surgery on an edge needs an incident vertex (at=...)")
    for inc in g.incident(at):
        if inc.edge == e:
            return (at, inc.other)
    raise UnknownEdgeError(e)


def _patch_id(g, tag: str, *parts):
    return ("~" + tag, *parts)


def subdivide_edge(g, e: EdgeId, at: Vertex | None = None, new_vertex: Vertex | None = None):
    """Replace edge ``e`` by a two-edge path through a fresh degree-2 vertex.

    For oracles pass ``at``, a vertex incident to ``e``.  Returns the new graph;
    the fresh vertex is recorded in ``metadata["last_new_vertex"]``.
    """
    if isinstance(g, FiniteMultigraph):
        u, v = g.endpoints(e)
        verts, edges = _as_mutable(g)
        w = new_vertex if new_vertex is not None else _fresh(set(verts), len(verts))
        if w in set(verts):
            raise GraphError(f"vertex {w!r} already exists")
        del edges[e]
        e1 = _fresh(edges.keys(), len(edges))
        edges[e1] = (u, w)
        e2 = _fresh(edges.keys(), len(edges))
        edges[e2] = (w, v)
        out = _rebuild(g, verts + [w], edges)
        out.metadata["last_new_vertex"] = w
        return out
    u, v = _endpoints_in_oracle(g, e, at)
    w = new_vertex if new_vertex is not None else _patch_id(g, "sub", e)
    patch = PatchedOracle(g, removed=[e], added_vertices=[w],
                          added_edges={(e, "h0"): (u, w), (e, "h1"): (w, v)},
                          metadata=dict(g.metadata, last_new_vertex=w))
    patch.metadata.pop("descriptor", None)
    return patch


def attach_lollipop(g, v: Vertex):
    """Hang a pendant vertex carrying a self-loop off ``v``."""
    if isinstance(g, FiniteMultigraph):
        g.incident(v)
        verts, edges = _as_mutable(g)
        w = _fresh(set(verts), len(verts))
        e1 = _fresh(edges.keys(), len(edges))
        edges[e1] = (v, w)
        e2 = _fresh(edges.keys(), len(edges))
        edges[e2] = (w, w)
        out = _rebuild(g, verts + [w], edges)
        out.metadata["last_new_vertex"] = w
        return out
    g.incident(v)
    w = _patch_id(g, "pop", v)
    out = PatchedOracle(g, added_vertices=[w],
                        added_edges={(w, "stick"): (v, w), (w, "loop"): (w, w)},
                        metadata={k: x for k, x in g.metadata.items() if k != "descriptor"})
    out.metadata["last_new_vertex"] = w
    return out


def add_self_loops(g, v: Vertex, m: int):
    if m < 0:
        raise GraphError("m must be non-negative")
    g.incident(v)
    if m == 0:
        return g
    if isinstance(g, FiniteMultigraph):
        verts, edges = _as_mutable(g)
        for _ in range(m):
            edges[_fresh(edges.keys(), len(edges))] = (v, v)
        return _rebuild(g, verts, edges)
    return PatchedOracle(g, added_edges={_patch_id(g, "loop", v, j): (v, v) for j in range(m)},
                         metadata={k: x for k, x in g.metadata.items() if k != "descriptor"})


def double_edges(g: FiniteMultigraph) -> FiniteMultigraph:
    """Add a parallel copy of every edge (a self-loop gets a second loop)."""
    verts, edges = _as_mutable(g)
    doubled = {}
    for e, uv in edges.items():
        doubled[(e, 0)] = uv
        doubled[(e, 1)] = uv
    return _rebuild(g, verts, doubled)


def edge_ends(g, v: Vertex) -> list[tuple[EdgeId, int]]:
    """The edge-ends at ``v`` in incident order; a loop yields ``(e, 0), (e, 1)``."""
    out = []
    for inc in g.incident(v):
        if inc.loop:
            out.extend([(inc.edge, 0), (inc.edge, 1)])
        else:
            out.append((inc.edge, 0))
    return out


def split_degree6(g: FiniteMultigraph, v: Vertex, grouping: Sequence[int] | None = None) -> FiniteMultigraph:
    """Split a degree-6 vertex into two degree-4 vertices joined by an edge.

    ``grouping`` lists the positions (in :func:`edge_ends` order) of the three
    edge-ends that go to the first new vertex; default is the first three.
    A self-loop whose two ends land on different sides becomes an edge
    between the two new vertices.
    """
    ends = edge_ends(g, v)
    if len(ends) != 6:
        raise GraphError(f"vertex {v!r} has degree {len(ends)}, not 6")
    first = tuple(range(3)) if grouping is None else tuple(grouping)
    if len(set(first)) != 3 or not all(0 <= i < 6 for i in first):
        raise GraphError(f"invalid grouping {grouping!r}: need three distinct positions in 0..5")
    side = {ends[i]: (0 if i in first else 1) for i in range(6)}
    verts, edges = _as_mutable(g)
    taken = set(verts)
    a = _fresh(taken, len(verts))
    taken.add(a)
    b = _fresh(taken, len(verts))
    halves = (a, b)
    for e in list(edges):
        x, y = edges[e]
        if x == v and y == v:
            edges[e] = (halves[side[(e, 0)]], halves[side[(e, 1)]])
        elif x == v:
            edges[e] = (halves[side[(e, 0)]], y)
        elif y == v:
            edges[e] = (x, halves[side[(e, 0)]])
    edges[_fresh(edges.keys(), len(edges))] = (a, b)
    new_verts = [w for w in verts if w != v] + [a, b]
    root = g.root
    if root == v:
        root = a
    return FiniteMultigraph(new_verts, edges, root=root, name=g.name, metadata=g.metadata)


def bfs_depths(g, radius: int | None = None, root: Vertex | None = None) -> dict[Vertex, int]:
    """Graph distance from the root for all vertices within ``radius``."""
    start = g.root if root is None else root
    depth = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        d = depth[x]
        if radius is not None and d >= radius:
            continue
        for inc in g.incident(x):
            if inc.other not in depth:
                depth[inc.other] = d + 1
                queue.append(inc.other)
    return depth


def is_k_regular_within(g, k: int, r: int) -> bool:
    """True iff every vertex at depth <= r has degree k."""
    if r < 0:
        raise GraphError("radius must be non-negative")
    depth = {g.root: 0}
    queue = deque([g.root])
    while queue:
        x = queue.popleft()
        incs = g.incident(x)
        if _ends(incs) != k:
            return False
        d = depth[x]
        if d >= r:
            continue
        for inc in incs:
            if inc.other not in depth:
                depth[inc.other] = d + 1
                queue.append(inc.other)
    return True


def materialize(g, radius: int, name: str = "window") -> FiniteMultigraph:
    """Induced finite subgraph on the vertices at depth <= radius."""
    depth = bfs_depths(g, radius)
    edges = {}
    for x in depth:
        for inc in g.incident(x):
            if inc.other in depth and inc.edge not in edges:
                edges[inc.edge] = (x, inc.other)
    return FiniteMultigraph(list(depth), edges, root=g.root, name=name)


# ---------------------------------------------------------------- text formats

def _token(x) -> str:
    s = str(x)
    if not s or any(c.isspace() for c in s):
        raise GraphError(f"identifier {x!r} cannot be written in the text format")
    return s


def to_text(g: FiniteMultigraph) -> str:
    lines = [f"graph {_token(g.name)} root={_token(g.root)}"]
    lines += [f"v {_token(v)}" for v in g.vertices]
    lines += [f"e {_token(e)} {_token(u)} {_token(v)}" for e, (u, v) in g.edges.items()]
    return "\n".join(lines) + "\n"


def _dot_id(x) -> str:
    return '"' + str(x).replace('"', '\\"') + '"'


def to_dot(g: FiniteMultigraph) -> str:
    """DOT source; parallel edges and loops are emitted one statement each."""
    out = [f"graph {_dot_id(g.name)} {{"]
    for v in g.vertices:
        shape = "doublecircle" if v == g.root else "circle"
        out.append(f"  {_dot_id(v)} [shape={shape}];")
    for e, (u, v) in g.edges.items():
        out.append(f"  {_dot_id(u)} -- {_dot_id(v)} [label={_dot_id(e)}];")
    out.append("}")
    return "\n".join(out) + "\n"
