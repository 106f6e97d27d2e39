"""Proper homotopy type on descriptor-backed graphs.

Two graphs are properly homotopy equivalent exactly when their ranks agree and
their endspace pairs are homeomorphic.  Exact decisions are made on
``StandardGraphDescriptor`` values; for finite end spaces the invariant is
also coded as a finite two-sorted Boolean structure and compared by brute force.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations

from .builtins import CombSequence, JoinOracle, LochNess, Ray, RegularTree, lollipop_graph, path_graph
from .closedsets import ClosedSetSpec
from .descriptors import (INF, CantorPair, ConvergentSequence, DescriptorError, FinitePair,
                          StandardGraphDescriptor)
from .ends import rank_lower_bound
from .graph import FiniteMultigraph, GraphError
from .reductions import GammaOracle, gamma_k, gamma_star


class UnrealizableError(GraphError):
    pass


class UnsupportedError(GraphError):
    """Realizable in principle, but no construction is implemented."""


def phe_equivalent(d1: StandardGraphDescriptor, d2: StandardGraphDescriptor) -> bool:
    """Equal ranks and homeomorphic endspace pairs (each catalog variant value is one class)."""
    d1.validate()
    d2.validate()
    return d1.rank == d2.rank and d1.endpair == d2.endpair


# --------------------------------------------------------------- Stone coding

@dataclass(frozen=True)
class BooleanAlgebra:
    elements: tuple
    meet: dict
    join: dict
    complement: dict
    zero: object
    one: object

    def check_axioms(self) -> None:
        E = self.elements
        for a in E:
            if self.meet[a, self.one] != a or self.join[a, self.zero] != a:
                raise ValueError("identity law fails")
            c = self.complement[a]
            if self.meet[a, c] != self.zero or self.join[a, c] != self.one:
                raise ValueError("complement law fails")
            for b in E:
                if self.meet[a, b] != self.meet[b, a] or self.join[a, b] != self.join[b, a]:
                    raise ValueError("commutativity fails")
                for x in E:
                    if self.meet[a, self.join[b, x]] != self.join[self.meet[a, b], self.meet[a, x]]:
                        raise ValueError("distributivity fails")

    def atoms(self) -> list:
        return [a for a in self.elements if a != self.zero
                and all(self.meet[a, x] in (self.zero, a) for x in self.elements)]

    def below(self, x) -> frozenset:
        return frozenset(a for a in self.atoms() if self.meet[a, x] == a)


def _powerset_algebra(points: list, tag: str) -> BooleanAlgebra:
    subsets = [frozenset(c) for r in range(len(points) + 1) for c in combinations(points, r)]
    el = {s: (tag, tuple(sorted(s, key=repr))) for s in subsets}
    full = frozenset(points)
    meet = {(el[a], el[b]): el[a & b] for a in subsets for b in subsets}
    join = {(el[a], el[b]): el[a | b] for a in subsets for b in subsets}
    comp = {el[a]: el[full - a] for a in subsets}
    return BooleanAlgebra(tuple(el[s] for s in subsets), meet, join, comp,
                          el[frozenset()], el[full])


@dataclass(frozen=True)
class CountableStructure:
    """``(n, K, L, f)``: a constant, two Boolean algebras on disjoint carriers, and f: K -> L."""

    n: int
    K: BooleanAlgebra
    L: BooleanAlgebra
    f: dict

    def check(self) -> None:
        self.K.check_axioms()
        self.L.check_axioms()
        if set(self.K.elements) & set(self.L.elements):
            raise ValueError("K and L carriers overlap")
        if set(self.f.values()) != set(self.L.elements):
            raise ValueError("f is not surjective")


def stone_structure(d: StandardGraphDescriptor, labels=None, tags=("K", "L")) -> CountableStructure:
    """Code a finite-endspace descriptor as ``(n, K, L, f)``.

    n is rank + 1 (0 for infinite rank), K the clopen algebra of the ends,
    L that of the loop ends and f intersection with the loop ends.  ``labels``
    names the ends (the first ``loop_ends`` are the loop ends) and ``tags``
    the two carriers; both only change the presentation.
    """
    d.validate()
    ep = d.endpair
    if not isinstance(ep, FinitePair):
        raise DescriptorError("Stone coding is only implemented for finite end spaces")
    pts = list(labels) if labels is not None else list(range(ep.ends))
    if len(pts) != ep.ends or len(set(pts)) != ep.ends:
        raise DescriptorError("need one distinct label per end")
    loops = pts[: ep.loop_ends]
    K = _powerset_algebra(pts, tags[0])
    L = _powerset_algebra(loops, tags[1])
    lset = frozenset(loops)
    f = {}
    for x in K.elements:
        y = tuple(sorted(frozenset(x[1]) & lset, key=repr))
        f[x] = (tags[1], y)
    n = 0 if d.infinite_rank else d.rank + 1
    return CountableStructure(n, K, L, f)


def structures_isomorphic(s1: CountableStructure, s2: CountableStructure) -> bool:
    """Brute force over bijections of K-atoms; the L-part is then forced by f."""
    if s1.n != s2.n or len(s1.K.elements) != len(s2.K.elements) \
            or len(s1.L.elements) != len(s2.L.elements):
        return False
    a1, a2 = s1.K.atoms(), s2.K.atoms()
    if len(a1) != len(a2):
        return False
    by_atoms2 = {s2.K.below(x): x for x in s2.K.elements}
    below1 = {x: s1.K.below(x) for x in s1.K.elements}
    for perm in permutations(a2):
        amap = dict(zip(a1, perm))
        phi = {x: by_atoms2[frozenset(amap[a] for a in below1[x])] for x in s1.K.elements}
        if not _preserves(s1.K, s2.K, phi):
            continue
        psi: dict = {}
        ok = True
        for x in s1.K.elements:
            y1, y2 = s1.f[x], s2.f[phi[x]]
            if psi.setdefault(y1, y2) != y2:
                ok = False
                break
        if ok and len(set(psi.values())) == len(s1.L.elements) and _preserves(s1.L, s2.L, psi):
            return True
    return False


def _preserves(A: BooleanAlgebra, B: BooleanAlgebra, phi: dict) -> bool:
    if phi.get(A.zero) != B.zero or phi.get(A.one) != B.one:
        return False
    for x in A.elements:
        if phi[A.complement[x]] != B.complement[phi[x]]:
            return False
        for y in A.elements:
            if phi[A.meet[x, y]] != B.meet[phi[x], phi[y]] or phi[A.join[x, y]] != B.join[phi[x], phi[y]]:
                return False
    return True


def descriptor_grid(max_rank: int = 5, max_ends: int = 4) -> list:
    """All valid descriptors with rank in 0..max_rank or inf and FinitePair(n <= max_ends)."""
    out = []
    for r in list(range(max_rank + 1)) + [INF]:
        for n in range(1, max_ends + 1):
            for l in range(0, n + 1):
                d = StandardGraphDescriptor(r, FinitePair(n, l))
                try:
                    out.append(d.validate())
                except DescriptorError:
                    pass
    return out


# ---------------------------------------------------------- clopen enumeration

def _reduced(antichain: tuple) -> bool:
    s = set(antichain)
    for w in antichain:
        if any(w[:i] in s for i in range(len(w))):
            return False
        if w and (w[:-1] + ("1" if w[-1] == "0" else "0")) in s:
            return False
    return True


def _antichains_of_cost(c: int) -> list:
    """Reduced cylinder antichains whose cost sum(len(w)+1) is exactly c."""
    words = [""]
    frontier = [""]
    for _ in range(c - 1):
        frontier = [w + b for w in frontier for b in "01"]
        words += frontier
    out = []

    def rec(start, budget, chosen):
        if budget == 0:
            t = tuple(chosen)
            if _reduced(t):
                out.append(t)
            return
        for i in range(start, len(words)):
            w = words[i]
            cost = len(w) + 1
            if cost > budget:
                break  # words are listed by length
            if any(w.startswith(x) or x.startswith(w) for x in chosen):
                continue
            chosen.append(w)
            rec(i + 1, budget - cost, chosen)
            chosen.pop()

    rec(0, c, [])
    return sorted(out, key=lambda t: ",".join(t))


def clopen_prime(i: int) -> tuple:
    """The i-th clopen set O'_i as a reduced antichain of cylinder words."""
    if i < 0:
        raise ValueError("index must be non-negative")
    seen = 0
    c = 0
    while True:
        level = _antichains_of_cost(c) if c > 0 else [()]
        if i < seen + len(level):
            return level[i - seen]
        seen += len(level)
        c += 1


def clopen_set(i: int) -> tuple:
    """O_i, where O_{2i} = O_{2i+1} = O'_i."""
    return clopen_prime(i // 2)


def clopen_trace(c: ClosedSetSpec, antichain: tuple, depth: int) -> frozenset:
    """Words of C at length ``depth`` whose cylinder lies in the clopen set."""
    return frozenset(w for w in c.words_at(depth) if any(w.startswith(x) for x in antichain))


def clopen_enumeration(c: ClosedSetSpec, i: int, depth: int) -> frozenset:
    return clopen_trace(c, clopen_set(i), depth)


@dataclass
class Dedup:
    rho: list      # indices i with a trace on C not seen before
    rho_loop: list  # the same for the loop part
    traces: list


def dedup_enumeration(c: ClosedSetSpec, count: int, depth: int,
                      loop_part: ClosedSetSpec | None = None) -> Dedup:
    """Order-preserving repetition-free subsequences of O_0..O_{count-1} traced on C and E_l."""
    lp = c if loop_part is None else loop_part
    rho, rho_l, traces = [], [], []
    seen, seen_l = set(), set()
    for i in range(count):
        t = clopen_enumeration(c, i, depth)
        if t not in seen:
            seen.add(t)
            rho.append(i)
            traces.append(t)
        tl = clopen_enumeration(lp, i, depth)
        if tl not in seen_l:
            seen_l.add(tl)
            rho_l.append(i)
    return Dedup(rho, rho_l, traces)


# ------------------------------------------------------------- distinguishing

@dataclass(frozen=True)
class Distinguished:
    reason: str


@dataclass(frozen=True)
class Unknown:
    reason: str = "no sound certificate within budget"


def descriptor_of(g):
    return getattr(g, "metadata", {}).get("descriptor")


def phe_distinguish(g1, g2, budget: int = 8):
    """Sound one-sided test: descriptors differ, or a certified rank bound is exceeded."""
    d1, d2 = descriptor_of(g1), descriptor_of(g2)
    if d1 is not None and d2 is not None:
        if not phe_equivalent(d1, d2):
            return Distinguished(f"descriptors differ: {d1} vs {d2}")
        return Unknown("descriptors agree")
    for known, other in ((d1, g2), (d2, g1)):
        if known is not None and not known.infinite_rank:
            lb = rank_lower_bound(other, budget)
            if lb > known.rank:
                return Distinguished(f"rank {known.rank} certified on one side, "
                                     f"rank >= {lb} seen within radius {budget} on the other")
    return Unknown()


# ---------------------------------------------------------------- realization

@dataclass(frozen=True)
class Space:
    """``kind`` is ``"k"`` (k-regular), ``"le"`` (max degree <= k) or ``"fin"`` (locally finite)."""

    kind: str
    k: int = 0

    def __str__(self) -> str:
        return {"k": f"G{self.k}", "le": f"G<={self.k}", "fin": "G<inf"}[self.kind]


def parse_space(text: str) -> Space:
    t = text.strip().replace(" ", "")
    if t in ("<inf", "G<inf", "fin", "finite"):
        return Space("fin")
    m = re.fullmatch(r"G?(<=)?(\d+)", t)
    if not m:
        raise ValueError(f"bad space {text!r}: use k, <=k or <inf")
    k = int(m.group(2))
    return Space("le" if m.group(1) else "k", k)


def finite_points_dfa(n: int) -> ClosedSetSpec:
    """An n-point closed set: 1^j 0^w for j < n-1, together with 1^w."""
    if n < 2:
        raise ValueError("use a singleton for n = 1")
    z = n  # absorbing all-zeros state
    delta = {(z, 0): z}
    for j in range(n - 1):
        delta[(j, 0)] = z
        delta[(j, 1)] = j + 1
    delta[(n - 1, 1)] = n - 1
    return ClosedSetSpec.dfa(n + 1, delta, range(n + 1))


def _tag(g, d: StandardGraphDescriptor, name: str):
    g.metadata["descriptor"] = d
    g.metadata["name"] = name
    return g


def _hang(pieces: list, d, name: str):
    """A core path with one piece hung off each core vertex (root = first vertex)."""
    core = path_graph(len(pieces))
    return _tag(JoinOracle(core, [(i, p) for i, p in enumerate(pieces)]), d, name)


def fig4_cantor():
    """3-regular: a Cantor set of ends, half of them accumulated by loops."""
    core = FiniteMultigraph(["o"], {}, root="o", name="core")
    g = JoinOracle(core, [("o", lollipop_graph()),
                          ("o", gamma_star(ClosedSetSpec.full())),
                          ("o", GammaOracle(ClosedSetSpec.full(), 3, root_gadget=False))])
    return _tag(g, StandardGraphDescriptor(INF, CantorPair("clopen")), "fig4_cantor")


def realize(d: StandardGraphDescriptor, space) -> object:
    """A descriptor-backed oracle in the requested space whose metadata carries ``d``."""
    d.validate()
    sp = parse_space(space) if isinstance(space, str) else space
    ep = d.endpair
    if sp.kind == "k":
        return _realize_regular(d, sp.k)
    if sp.kind == "le" and sp.k < 3:
        if isinstance(ep, FinitePair) and d.rank == 0 and ep.ends <= 2 and sp.k == 2:
            return _tag(Ray(), d, "ray") if ep.ends == 1 else \
                _hang([Ray(), Ray()], d, "line")
        raise UnrealizableError(f"{d} needs a vertex of degree 3; {sp} only has paths, rays and lines")
    if isinstance(ep, FinitePair):
        if d.rank == 0 and ep.ends == 1:
            return _tag(Ray(), d, "ray")
        pieces = [Ray() for _ in range(ep.ends - ep.loop_ends)]
        pieces += [LochNess(root_loop=False) for _ in range(ep.loop_ends)]
        if not d.infinite_rank:
            pieces += [lollipop_graph() for _ in range(d.rank)]
        return _hang(pieces, d, "standard")
    if isinstance(ep, ConvergentSequence):
        g = CombSequence(loops=ep.limit_in_loops, finite_rank=0 if d.infinite_rank else d.rank)
        return _tag(g, d, g.metadata["name"])
    if ep.loop_part == "empty":
        pieces = [gamma_star(ClosedSetSpec.full())] + [lollipop_graph() for _ in range(d.rank)]
        return _hang(pieces, d, "standard")
    if ep.loop_part == "all":
        g = GammaOracle(ClosedSetSpec.full(), 3)
        return _tag(g, d, "gamma3")
    return fig4_cantor()


def _realize_regular(d: StandardGraphDescriptor, k: int):
    ep = d.endpair
    if k < 3:
        raise UnrealizableError(f"no infinite connected {k}-regular graph has {d}")
    if isinstance(ep, FinitePair):
        if ep.loop_ends < ep.ends:
            raise UnrealizableError(
                f"{d}: an isolated end not accumulated by loops has a one-ended finite-rank "
                f"neighbourhood, i.e. a ray, which forces degree-2 vertices outside G{k}")
        if ep.ends == 1:
            g = LochNess() if k == 3 else gamma_k(ClosedSetSpec.singleton("", "0"), k)
            return _tag(g, d, "loch_ness" if k == 3 else f"loch_ness{k}")
        c = finite_points_dfa(ep.ends)
        g = GammaOracle(c, k)
        return _tag(g, d, f"gamma{k}")
    if isinstance(ep, ConvergentSequence):
        raise UnrealizableError(f"{d}: the isolated ends 1/n are not accumulated by loops, so each "
                                f"forces a ray and degree-2 vertices outside G{k}")
    if ep.loop_part == "all":
        return _tag(GammaOracle(ClosedSetSpec.full(), k), d, f"gamma{k}")
    if ep.loop_part == "empty":
        from .genericity import delta_u
        g = RegularTree(k)
        if d.rank:
            g = delta_u(g, 0, d.rank, k)
        return _tag(g, d, f"tree{k}" if not d.rank else f"tree{k}+{d.rank}")
    if k == 3:
        return fig4_cantor()
    raise UnsupportedError(f"{d} in G{k}: a construction is only implemented for k = 3")
