"""From closed subsets of Cantor space to regular graphs whose ends are all loop-accumulated.

``gamma_star(C)`` is the pruned binary tree of C.  ``GammaOracle`` builds the
regular graphs lazily in one pass over the subdivided tree:

* base vertices ``("v", w)`` for member words, ``("s", w)`` for the midpoint
  of the edge from ``w[:-1]`` to ``w``; edges ``("a", w)`` (upper half) and
  ``("b", w)`` (lower half);
* k = 3: a lollipop on every degree-2 base vertex;
* odd k >= 5: loops on degree-3 vertices, a barrel cactus on degree-2 ones;
* even k >= 6: every base edge doubled (suffix 0/1), then loops;
* k = 4: every base edge doubled, then each degree-6 vertex split in two.

A degree-1 root (C inside one half-cylinder) is topped up with loops.
"""

from __future__ import annotations

from .builtins import LochNess
from .closedsets import ClosedSetSpec, validate_closed_set
from .descriptors import INF, CantorPair, FinitePair, StandardGraphDescriptor
from .graph import (FiniteMultigraph, GraphError, GraphOracle, Incidence, UnknownVertexError,
                    edge_ends, materialize, rank, split_degree6)


class ConstructionError(GraphError):
    pass


def _require_valid(c: ClosedSetSpec, depth: int = 6) -> None:
    if not c.member(""):
        raise ConstructionError("closed set is empty")
    rep = validate_closed_set(c, depth)
    if rep.violations:
        raise ConstructionError("invalid closed set: " + rep.violations[0])


def _is_word(w) -> bool:
    return isinstance(w, str) and not w.strip("01")


def _descriptor(c: ClosedSetSpec):
    if c.kind == "singleton":
        return StandardGraphDescriptor(INF, FinitePair(1, 1))
    if c.kind in ("full", "cylinders"):
        return StandardGraphDescriptor(INF, CantorPair("all"))
    return None


class GammaStar(GraphOracle):
    """The pruned binary tree of C: words, edges by one-letter extension (edge id = child)."""

    def __init__(self, c: ClosedSetSpec):
        _require_valid(c)
        self.c = c
        super().__init__("", {"name": "gamma_star", "closed_set": c.to_text()})

    def children(self, w: str) -> tuple[str, ...]:
        kids = self.c.children(w)
        if not kids:
            raise ConstructionError(f"dead end at word {w or '(empty)'}")
        return kids

    def incident(self, w):
        if not _is_word(w) or not self.c.member(w):
            raise UnknownVertexError(w)
        out = [Incidence(w, w[:-1], False)] if w else []
        out += [Incidence(x, x, False) for x in self.children(w)]
        return tuple(out)


def gamma_star(c: ClosedSetSpec) -> GammaStar:
    return GammaStar(c)


_ROLES = {"v": "tree vertex", "s": "subdivision vertex", "p": "gadget vertex",
          "h": "split half"}


class GammaOracle(GraphOracle):
    """Lazy k-regular graph with end space C, every end accumulated by loops.

    ``root_gadget=False`` leaves the root short of degree k so the graph can be
    hung off another vertex by one extra edge.  ``split=False`` (k = 4 only)
    stops after doubling, which is useful for checking the splitting move.
    ``grouping`` is passed to the degree-6 split (positions of the three
    edge-ends kept on the first half).
    """

    def __init__(self, c: ClosedSetSpec, k: int, root_gadget: bool = True,
                 grouping=None, split: bool = True):
        if k < 3:
            raise ConstructionError("k must be at least 3")
        _require_valid(c)
        self.c = c
        self.k = k
        self.root_gadget = root_gadget
        self.doubled = k % 2 == 0
        self.split = split and k == 4
        self._kid_cache: dict = {}
        self.grouping = tuple(grouping) if grouping is not None else (0, 1, 2)
        if len(set(self.grouping)) != 3 or not all(0 <= i < 6 for i in self.grouping):
            raise ConstructionError(f"invalid grouping {grouping!r}")
        if k == 3:
            branch = "lollipop"
        elif k == 4:
            branch = "four" if self.split else "four-doubled"
        else:
            branch = "odd" if k % 2 else "even"
        if c.is_singleton:
            branch = "singleton/" + branch
        self.branch = branch
        meta = {"name": f"gamma{k}", "closed_set": c.to_text(), "branch": branch}
        d = _descriptor(c)
        if d is not None and root_gadget and split:
            meta["descriptor"] = d
        # the root has no parent edge, so it is never split
        super().__init__(("v", ""), meta)

    # ------------------------------------------------------------ base tree
    def _kids(self, w: str) -> tuple[str, ...]:
        kids = self._kid_cache.get(w)
        if kids is None:
            kids = self.c.children(w)
            if not kids:
                raise ConstructionError(f"dead end at word {w or '(empty)'}")
            self._kid_cache[w] = kids
        return kids

    def _base(self, x) -> list[tuple]:
        """Incidences ``(edge, other)`` of the subdivided tree (no loops there)."""
        kind, w = x
        if kind == "s":
            return [(("a", w), ("v", w[:-1])), (("b", w), ("v", w))]
        out = [(("b", w), ("s", w))] if w else []
        out += [(("a", y), ("s", y)) for y in self._kids(w)]
        return out

    def _base_degree(self, x) -> int:
        return len(self._base(x))

    def _valid_base(self, x) -> bool:
        if not (isinstance(x, tuple) and len(x) == 2 and x[0] in ("v", "s") and _is_word(x[1])):
            return False
        w = x[1]
        if x[0] == "s" and not w:
            return False
        return w in self._kid_cache or self.c.member(w)

    def _needs_gadget(self, x) -> bool:
        return self.root_gadget or x != ("v", "")

    # -------------------------------------------------------------- gadgets
    def _loops(self, x) -> int:
        if not self._needs_gadget(x):
            return 0
        d, k = self._base_degree(x), self.k
        if k == 3:
            return 1 if d == 1 else 0
        if k == 4:
            return 1 if d == 1 else 0
        if k % 2:
            return {3: (k - 3) // 2, 2: 0, 1: (k - 1) // 2}[d]
        return {3: (k - 6) // 2, 2: (k - 4) // 2, 1: (k - 2) // 2}[d]

    def _has_pendant(self, x) -> bool:
        return self.k % 2 == 1 and self._base_degree(x) == 2 and self._needs_gadget(x)

    # ------------------------------------------------------------ splitting
    def _ends(self, x) -> list:
        """Edge-ends at a doubled base vertex, in incident order."""
        return [(e + (j,), o) for e, o in self._base(x) for j in (0, 1)]

    def _is_split(self, x) -> bool:
        return self.split and self._base_degree(x) == 3

    def _half_of(self, x, edge) -> tuple:
        """Which half of a split vertex owns ``edge``."""
        pos = [e for e, _ in self._ends(x)].index(edge)
        return ("h", x, 0 if pos in self.grouping else 1)

    def _resolve(self, x, edge):
        return self._half_of(x, edge) if self._is_split(x) else x

    # ---------------------------------------------------------------- query
    def incident(self, v):
        if isinstance(v, tuple) and len(v) == 3 and v[0] == "h":
            _, x, i = v
            if i not in (0, 1) or not self._valid_base(x) or not self._is_split(x):
                raise UnknownVertexError(v)
            out = []
            for e, o in self._ends(x):
                if self._half_of(x, e)[2] == i:
                    out.append(Incidence(e, self._resolve(o, e), False))
            out.append(Incidence(("hc", x), ("h", x, 1 - i), False))
            return tuple(out)
        if isinstance(v, tuple) and len(v) == 2 and v[0] == "p":
            x = v[1]
            if not self._valid_base(x) or not self._has_pendant(x):
                raise UnknownVertexError(v)
            out = [Incidence(("st", x, j), x, False) for j in range(self.k - 2)]
            out.append(Incidence(("pl", x), v, True))
            return tuple(out)
        if not self._valid_base(v) or self._is_split(v):
            raise UnknownVertexError(v)
        x = v
        if self.doubled:
            out = [Incidence(e, self._resolve(o, e), False) for e, o in self._ends(x)]
        else:
            out = [Incidence(e, o, False) for e, o in self._base(x)]
        if self._has_pendant(x):
            out += [Incidence(("st", x, j), ("p", x), False) for j in range(self.k - 2)]
        out += [Incidence(("lp", x, j), x, True) for j in range(self._loops(x))]
        return tuple(out)

    def trace(self, v) -> dict:
        """Provenance of an emitted vertex: branch, role and originating word."""
        self.incident(v)
        if v[0] == "h":
            return {"branch": self.branch, "role": _ROLES["h"], "half": v[2],
                    "base": _ROLES[v[1][0]], "word": v[1][1]}
        if v[0] == "p":
            role = "lollipop head" if self.k == 3 else "barrel cactus"
            return {"branch": self.branch, "role": role, "base": _ROLES[v[1][0]], "word": v[1][1]}
        return {"branch": self.branch, "role": _ROLES[v[0]], "word": v[1]}


def gamma_3(c: ClosedSetSpec, root_gadget: bool = True):
    """The 3-regular graph of C; the singleton presentation gives the loch-ness builtin."""
    if c.is_singleton and root_gadget:
        _require_valid(c)
        g = LochNess()
        g.metadata["closed_set"] = c.to_text()
        return g
    return GammaOracle(c, 3, root_gadget=root_gadget)


def gamma_k(c: ClosedSetSpec, k: int, grouping=None, split: bool = True):
    if k < 4:
        raise ConstructionError("gamma_k needs k >= 4; use gamma_3 for k = 3")
    return GammaOracle(c, k, grouping=grouping, split=split)


def gamma(c: ClosedSetSpec, k: int):
    return gamma_3(c) if k == 3 else gamma_k(c, k)


def split_all_degree6(window: FiniteMultigraph, grouping=None, check=True):
    """Split every degree-6 vertex of a finite graph, one at a time.

    Returns the final graph and the list of ``(vertex, rank_before, rank_after)``.
    Vertices are processed in their listed order; ``check`` raises on any
    change of Betti number.
    """
    g = window
    log = []
    for v in list(window.vertices):
        if v not in g or len(edge_ends(g, v)) != 6:
            continue
        before = rank(g)
        g = split_degree6(g, v, grouping)
        after = rank(g)
        log.append((v, before, after))
        if check and before != after:
            raise GraphError(f"split at {v!r} changed rank {before} -> {after}")
    return g, log


def doubled_window(c: ClosedSetSpec, radius: int) -> FiniteMultigraph:
    """The k = 4 construction before splitting, materialized to ``radius``."""
    return materialize(GammaOracle(c, 4, split=False), radius, name="doubled")
