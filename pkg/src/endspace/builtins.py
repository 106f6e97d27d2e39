"""Hand-built infinite graphs used as fixtures and as building blocks."""

from __future__ import annotations

from typing import Sequence

from .descriptors import INF, CantorPair, ConvergentSequence, FinitePair, StandardGraphDescriptor
from .graph import FiniteMultigraph, GraphOracle, Incidence, UnknownVertexError


def _nat(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


class Ray(GraphOracle):
    """Vertices 0, 1, 2, ...; edge i joins i and i+1."""

    def __init__(self):
        super().__init__(0, {"name": "ray",
                             "descriptor": StandardGraphDescriptor(0, FinitePair(1, 0))})

    def incident(self, v):
        if not _nat(v):
            raise UnknownVertexError(v)
        out = [] if v == 0 else [Incidence(v - 1, v - 1, False)]
        out.append(Incidence(v, v + 1, False))
        return tuple(out)


class RegularTree(GraphOracle):
    """The k-regular tree; vertices are tuples of child indices."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        ep = FinitePair(2, 0) if k == 2 else (FinitePair(1, 0) if k == 1 else CantorPair("empty"))
        meta = {"name": f"tree{k}"}
        if k >= 2:
            meta["descriptor"] = StandardGraphDescriptor(0, ep)
        super().__init__((), meta)

    def incident(self, v):
        if not isinstance(v, tuple):
            raise UnknownVertexError(v)
        if v:
            if not (0 <= v[0] < self.k and all(0 <= c < self.k - 1 for c in v[1:])):
                raise UnknownVertexError(v)
            out = [Incidence(v, v[:-1], False)]
            nkids = self.k - 1
        else:
            out = []
            nkids = self.k
        out += [Incidence(v + (c,), v + (c,), False) for c in range(nkids)]
        return tuple(out)


class LochNess(GraphOracle):
    """Ray x0 x1 ... with a loop at x0 and, for i >= 1, a pendant y_i with a loop.

    Every vertex has degree 3.  ``root_loop=False`` drops the loop at x0 so the
    graph can serve as a tail hung off another vertex.
    """

    def __init__(self, root_loop: bool = True):
        self.root_loop = root_loop
        meta = {"name": "loch_ness" if root_loop else "loch_ness_tail",
                "descriptor": StandardGraphDescriptor(INF, FinitePair(1, 1))}
        super().__init__(("x", 0), meta)

    def incident(self, v):
        if not (isinstance(v, tuple) and len(v) == 2 and v[0] in ("x", "y") and _nat(v[1])):
            raise UnknownVertexError(v)
        kind, i = v
        if kind == "y":
            if i == 0:
                raise UnknownVertexError(v)
            return (Incidence(("xy", i), ("x", i), False), Incidence(("yl", i), v, True))
        out = []
        if i == 0:
            if self.root_loop:
                out.append(Incidence(("xl", 0), v, True))
        else:
            out.append(Incidence(("xx", i - 1), ("x", i - 1), False))
            out.append(Incidence(("xy", i), ("y", i), False))
        out.append(Incidence(("xx", i), ("x", i + 1), False))
        return tuple(out)


class JoinOracle(GraphOracle):
    """A finite core with infinite (or finite) graphs hung off core vertices.

    ``attachments`` is a list of ``(core_vertex, graph)``; attachment j is
    joined by one edge from the core vertex to the attached graph's root.
    Vertex ids: ``("c", v)`` for core vertices, ``("a", j, w)`` otherwise.
    """

    def __init__(self, core: FiniteMultigraph, attachments: Sequence[tuple], metadata=None):
        super().__init__(("c", core.root), metadata)
        self.core = core
        self.attachments = tuple(attachments)
        self._at: dict = {}
        for j, (cv, g) in enumerate(self.attachments):
            core.incident(cv)
            self._at.setdefault(cv, []).append(j)

    def incident(self, v):
        if not (isinstance(v, tuple) and v and v[0] in ("c", "a")):
            raise UnknownVertexError(v)
        if v[0] == "c":
            if len(v) != 2:
                raise UnknownVertexError(v)
            cv = v[1]
            out = [Incidence(("c", inc.edge), ("c", inc.other), inc.loop)
                   for inc in self.core.incident(cv)]
            for j in self._at.get(cv, ()):
                out.append(Incidence(("link", j), ("a", j, self.attachments[j][1].root), False))
            return tuple(out)
        if len(v) != 3 or not (isinstance(v[1], int) and 0 <= v[1] < len(self.attachments)):
            raise UnknownVertexError(v)
        _, j, w = v
        cv, g = self.attachments[j]
        out = []
        if w == g.root:
            out.append(Incidence(("link", j), ("c", cv), False))
        out += [Incidence(("a", j, inc.edge), ("a", j, inc.other), inc.loop)
                for inc in g.incident(w)]
        return tuple(out)


def lollipop_graph() -> FiniteMultigraph:
    """A single vertex with a self-loop, rooted there (the lollipop head)."""
    return FiniteMultigraph([0], {0: (0, 0)}, root=0, name="lollipop")


def path_graph(m: int) -> FiniteMultigraph:
    return FiniteMultigraph(range(m), {i: (i, i + 1) for i in range(m - 1)}, root=0, name=f"path{m}")


class CombSequence(GraphOracle):
    """Spine s0 s1 ... with a ray hung off every even spine vertex.

    With ``loops=True`` every odd spine vertex carries a lollipop, so the limit
    end of the spine is accumulated by loops and the ray ends are not; with
    ``loops=False`` only the first ``finite_rank`` odd positions carry one.
    End space: {1/n} u {0} with the limit at the spine.  Max degree 3.
    """

    def __init__(self, loops: bool = True, finite_rank: int = 0):
        self.loops = loops
        self.finite_rank = finite_rank
        rank = INF if loops else finite_rank
        super().__init__(("s", 0), {
            "name": "fig4_middle" if loops else "comb",
            "descriptor": StandardGraphDescriptor(rank, ConvergentSequence(loops)),
        })

    def _has_pop(self, t: int) -> bool:
        return t % 2 == 1 and (self.loops or t // 2 < self.finite_rank)

    def incident(self, v):
        if not (isinstance(v, tuple) and v and v[0] in ("s", "r", "p")):
            raise UnknownVertexError(v)
        if v[0] == "s" and len(v) == 2 and _nat(v[1]):
            t = v[1]
            out = [] if t == 0 else [Incidence(("ss", t - 1), ("s", t - 1), False)]
            out.append(Incidence(("ss", t), ("s", t + 1), False))
            if t % 2 == 0:
                out.append(Incidence(("sr", t), ("r", t, 0), False))
            elif self._has_pop(t):
                out.append(Incidence(("sp", t), ("p", t), False))
            return tuple(out)
        if v[0] == "r" and len(v) == 3 and _nat(v[1]) and v[1] % 2 == 0 and _nat(v[2]):
            _, t, i = v
            prev = Incidence(("sr", t), ("s", t), False) if i == 0 else \
                Incidence(("rr", t, i - 1), ("r", t, i - 1), False)
            return (prev, Incidence(("rr", t, i), ("r", t, i + 1), False))
        if v[0] == "p" and len(v) == 2 and _nat(v[1]) and self._has_pop(v[1]):
            t = v[1]
            return (Incidence(("sp", t), ("s", t), False), Incidence(("pl", t), v, True))
        raise UnknownVertexError(v)
