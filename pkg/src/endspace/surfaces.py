"""Pants complexes and the graphs they induce.

A d-legged pants has d+1 boundary circles numbered 1..d+1.  Gluing matches
circles in pairs; the induced graph has one vertex per pants and one edge per
glued pair (a loop when both circles belong to the same pants).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable

from .descriptors import INF, DescriptorError, FinitePair, StandardGraphDescriptor
from .graph import FiniteMultigraph, GraphOracle, Incidence, UnknownVertexError, rank
from .phe import phe_equivalent


class PantsError(ValueError):
    pass


@dataclass(frozen=True)
class PantsComplex:
    legs: tuple            # legs[j] = d_j for pants j (ids 0..m-1)
    gluing: tuple          # ((p, i), (q, j)) pairs, circles numbered from 1
    base: int = 0
    names: tuple = ()      # optional external ids, parallel to legs

    def circles(self) -> list:
        return [(p, i) for p, d in enumerate(self.legs) for i in range(1, d + 2)]

    def validate(self) -> "PantsComplex":
        if not self.legs:
            raise PantsError("a pants complex needs at least one pants")
        if any(d < 0 for d in self.legs):
            raise PantsError("leg counts must be non-negative")
        if not 0 <= self.base < len(self.legs):
            raise PantsError(f"base {self.base} is not a pants")
        valid = set(self.circles())
        seen = set()
        for a, b in self.gluing:
            for c in (a, b):
                if c not in valid:
                    raise PantsError(f"circle {self._name(c)} does not exist")
                if c in seen:
                    raise PantsError(f"circle {self._name(c)} is glued twice")
                seen.add(c)
            if a == b:
                raise PantsError(f"circle {self._name(a)} is glued to itself")
        missing = sorted(valid - seen)
        if missing:
            raise PantsError(f"circle {self._name(missing[0])} is not glued")
        if not self._graph().is_connected():
            raise PantsError("the glued surface is disconnected")
        return self

    def _name(self, c) -> str:
        p, i = c
        pid = self.names[p] if self.names else p
        return f"{pid}.{i}"

    def _graph(self) -> FiniteMultigraph:
        edges = {n: (a[0], b[0]) for n, (a, b) in enumerate(self.gluing)}
        return FiniteMultigraph(range(len(self.legs)), edges, root=self.base, name="pants")

    def to_graph(self) -> FiniteMultigraph:
        """One vertex per pants, one edge per glued pair; root is the base pants."""
        self.validate()
        return self._graph()

    def euler_characteristic(self) -> int:
        self.validate()
        return sum(1 - d for d in self.legs)

    def genus(self) -> int:
        """Rank of the induced graph, cross-checked against (2 - chi) / 2."""
        g = rank(self.to_graph())
        chi = self.euler_characteristic()
        if 2 - chi != 2 * g:
            raise AssertionError(f"genus {g} disagrees with Euler characteristic {chi}")
        return g

    def to_text(self) -> str:
        pid = (lambda p: self.names[p]) if self.names else (lambda p: p)
        lines = [f"pants {pid(p)} legs={d}" for p, d in enumerate(self.legs)]
        lines += [f"glue {pid(a[0])}.{a[1]} {pid(b[0])}.{b[1]}" for a, b in self.gluing]
        lines.append(f"base {pid(self.base)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SurfaceClass:
    """Genus plus (ends, ends accumulated by genus); same consistency rules as graphs."""

    genus: float
    endpair: object

    def descriptor(self) -> StandardGraphDescriptor:
        try:
            return StandardGraphDescriptor(self.genus, self.endpair).validate()
        except DescriptorError as exc:
            raise PantsError(str(exc).replace("rank", "genus").replace("loops", "genus")) from None


LOCH_NESS_SURFACE = SurfaceClass(INF, FinitePair(1, 1))


class LazyPantsComplex:
    """An infinite pants complex given by functions; its graph is an oracle.

    ``legs(p)`` gives the leg count of pants p and ``partner((p, i))`` the
    circle glued to circle i of pants p.
    """

    def __init__(self, base, legs: Callable, partner: Callable, surface: SurfaceClass | None = None,
                 name: str = "lazy_pants"):
        self.base = base
        self.legs = legs
        self.partner = partner
        self.surface = surface
        self.name = name

    def to_graph(self) -> GraphOracle:
        cx = self

        class _PantsGraph(GraphOracle):
            def incident(self, p):
                try:
                    d = cx.legs(p)
                except (KeyError, ValueError, TypeError):
                    raise UnknownVertexError(p) from None
                out = []
                for i in range(1, d + 2):
                    q, j = cx.partner((p, i))
                    if q == p:
                        if i < j:
                            out.append(Incidence(((p, i), (q, j)), p, True))
                        continue
                    e = min(((p, i), (q, j)), ((q, j), (p, i)), key=repr)
                    out.append(Incidence(e, q, False))
                return tuple(out)

        meta = {"name": self.name}
        if self.surface is not None:
            meta["descriptor"] = self.surface.descriptor()
        return _PantsGraph(self.base, meta)


def annulus_chain() -> LazyPantsComplex:
    """A disk followed by infinitely many annuli: a plane, i.e. a sphere with one puncture."""

    def legs(p):
        if not (isinstance(p, int) and p >= 0):
            raise ValueError(p)
        return 0 if p == 0 else 1

    def partner(c):
        p, i = c
        if p == 0:
            return (1, 1)
        return (p - 1, 1 if p == 1 else 2) if i == 1 else (p + 1, 1)

    return LazyPantsComplex(0, legs, partner, SurfaceClass(0, FinitePair(1, 0)), "annulus_chain")


def surfaces_homeomorphic(a, b):
    """True/False when decidable, None for infinite complexes without a descriptor.

    Finite complexes are closed surfaces (no ends), compared by genus; surface
    classes and descriptor-backed lazy complexes go through the PHE test with
    genus in place of rank.
    """
    ka, kb = _kind(a), _kind(b)
    if ka == "unknown" or kb == "unknown":
        return None
    if ka == "closed" and kb == "closed":
        return a.genus() == b.genus()
    if ka == "closed" or kb == "closed":
        return False  # compact versus non-compact
    return phe_equivalent(_as_class(a).descriptor(), _as_class(b).descriptor())


def _kind(x) -> str:
    if isinstance(x, PantsComplex):
        x.validate()
        return "closed"
    if isinstance(x, SurfaceClass):
        x.descriptor()
        return "class"
    if isinstance(x, LazyPantsComplex):
        return "class" if x.surface is not None else "unknown"
    raise PantsError(f"cannot compare {type(x).__name__}")


def _as_class(x) -> SurfaceClass:
    return x if isinstance(x, SurfaceClass) else x.surface


# ------------------------------------------------------------- enumeration

def _matchings(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, rest[k])] + m


def enumerate_complexes(max_pants: int, max_legs: int, connected_only: bool = True):
    """Every complex with up to ``max_pants`` pants (leg tuples nondecreasing), all gluings."""
    for m in range(1, max_pants + 1):
        for legs in combinations_with_replacement(range(max_legs + 1), m):
            circles = [(p, i) for p, d in enumerate(legs) for i in range(1, d + 2)]
            if len(circles) % 2:
                continue
            for match in _matchings(circles):
                pc = PantsComplex(tuple(legs), tuple(match), 0)
                if connected_only and not pc._graph().is_connected():
                    continue
                yield pc


# ---------------------------------------------------------------- parsing

def parse_pants(text: str) -> PantsComplex:
    """Parse ``pants <id> legs=<d>``, ``glue <id>.<i> <id>.<i>`` and ``base <id>`` lines."""
    ids: dict = {}
    legs: list = []
    glue: list = []
    base = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        w = line.split()
        try:
            if w[0] == "pants":
                if len(w) != 3 or not w[2].startswith("legs="):
                    raise PantsError("expected 'pants <id> legs=<d>'")
                if w[1] in ids:
                    raise PantsError(f"duplicate pants id {w[1]}")
                d = w[2][5:]
                if not d.isdigit():
                    raise PantsError("legs must be a natural number")
                ids[w[1]] = len(legs)
                legs.append(int(d))
            elif w[0] == "glue":
                if len(w) != 3:
                    raise PantsError("expected 'glue <id>.<i> <id>.<i>'")
                glue.append(tuple(_circle(t, ids) for t in w[1:]))
            elif w[0] == "base":
                if len(w) != 2 or w[1] not in ids:
                    raise PantsError("expected 'base <id>' naming a declared pants")
                if base is not None:
                    raise PantsError("duplicate base line")
                base = ids[w[1]]
            else:
                raise PantsError(f"unknown keyword {w[0]!r}")
        except PantsError as exc:
            raise PantsError(f"line {ln}, column {raw.find(w[0]) + 1}: {exc}") from None
    if base is None:
        base = 0
    pc = PantsComplex(tuple(legs), tuple(glue), base, tuple(ids))
    return pc.validate()


def _circle(tok: str, ids: dict) -> tuple:
    pid, dot, i = tok.rpartition(".")
    if not dot or pid not in ids or not i.isdigit():
        raise PantsError(f"bad circle {tok!r}; expected <declared id>.<index>")
    return (ids[pid], int(i))
