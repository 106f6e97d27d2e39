"""Local surgeries pushing a graph into U_n or V_n, and configuration-model experiments."""

from __future__ import annotations

import csv
from collections import deque
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ends import level_components, rank_lower_bound, v_n_witness_radius
from .graph import FiniteMultigraph, GraphError, PatchedOracle, _fresh

MASK64 = (1 << 64) - 1


class SurgeryError(GraphError):
    pass


# ------------------------------------------------------------------ surgery

class _Builder:
    """Collects subdivisions and new pieces, then emits a finite graph or a patched oracle."""

    def __init__(self, g, tag: str):
        self.g = g
        self.tag = tag
        self.finite = isinstance(g, FiniteMultigraph)
        if self.finite:
            self.verts = list(g.vertices)
            self.edges = dict(g.edges)
            self._vtaken = set(self.verts)
        self.removed: list = []
        self.new_vertices: list = []
        self.new_edges: dict = {}

    def vertex(self, *key):
        if self.finite:
            w = _fresh(self._vtaken, len(self.verts))
            self._vtaken.add(w)
        else:
            w = ("~" + self.tag,) + key
        self.new_vertices.append(w)
        return w

    def edge(self, u, v, *key):
        if self.finite:
            e = _fresh(self.edges.keys() | self.new_edges.keys(), len(self.edges))
        else:
            e = ("~" + self.tag,) + key
        self.new_edges[e] = (u, v)
        return e

    def subdivide(self, e, u, v, m: int, key) -> list:
        """Replace edge ``e`` (from u to v) by a path through ``m`` fresh vertices."""
        self.removed.append(e)
        ws = [self.vertex("w", key, j) for j in range(m)]
        chain = [u] + ws + [v]
        for j in range(m + 1):
            self.edge(chain[j], chain[j + 1], "path", key, j)
        return ws

    def build(self, note: dict):
        meta = {k: x for k, x in self.g.metadata.items() if k != "descriptor"}
        meta["surgery"] = list(meta.get("surgery", [])) + [note]
        if self.finite:
            edges = {e: uv for e, uv in self.edges.items() if e not in set(self.removed)}
            edges.update(self.new_edges)
            return FiniteMultigraph(self.verts + self.new_vertices, edges, root=self.g.root,
                                    name=self.g.name, metadata=meta)
        return PatchedOracle(self.g, removed=self.removed, added_vertices=self.new_vertices,
                             added_edges=self.new_edges, metadata=meta)


def _gadget(b: _Builder, w, k: int, key) -> int:
    """Bring a fresh degree-2 vertex up to degree k; returns the cycles added."""
    if k < 3:
        raise SurgeryError("k must be at least 3")
    if k % 2 == 0:
        for j in range((k - 2) // 2):
            b.edge(w, w, "loop", key, j)
        return (k - 2) // 2
    p = b.vertex("pendant", key)
    for j in range(k - 2):
        b.edge(w, p, "stick", key, j)
    b.edge(p, p, "loop", key)
    return k - 2


def _outer_edges(g, r: int, n: int, limit: int) -> tuple[list, dict]:
    """The first n edges (BFS order) with both endpoints at depth >= r+1, searching to ``limit``."""
    found, seen = [], set()
    depth = {g.root: 0}
    queue = deque([g.root])
    while queue:
        x = queue.popleft()
        d = depth[x]
        for inc in g.incident(x):
            y = inc.other
            if y not in depth:
                if d + 1 > limit:
                    continue
                depth[y] = d + 1
                queue.append(y)
            if d < r + 1 or depth[y] < r + 1 or inc.edge in seen:
                continue
            seen.add(inc.edge)
            found.append((inc.edge, x, y))
            if len(found) == n:
                return found, depth
    return found, depth


def _depths_of(g, targets) -> dict:
    """BFS depths in ``g`` until every target vertex has been reached."""
    todo = set(targets)
    depth = {g.root: 0}
    queue = deque([g.root])
    todo.discard(g.root)
    while queue and todo:
        x = queue.popleft()
        for inc in g.incident(x):
            if inc.other not in depth:
                depth[inc.other] = depth[x] + 1
                todo.discard(inc.other)
                queue.append(inc.other)
    if todo:
        raise SurgeryError("surgery vertices are unreachable from the root")
    return depth


def delta_u(g, r: int, n: int, k: int, search_radius: int | None = None):
    """Subdivide n edges outside the radius-r ball and attach a degree-k gadget to each.

    k = 3 uses lollipops, odd k barrel cacti (k-2 parallel edges and a loop on
    a pendant vertex), even k (k-2)/2 loops on the subdivision vertex.  The
    radius-r ball is untouched and the rank grows by at least n.  The result's
    ``metadata["certificate_radius"]`` is a radius at which the gain is visible.
    """
    if n < 0 or r < 0:
        raise SurgeryError("r and n must be non-negative")
    if k < 3:
        raise SurgeryError("k must be at least 3")
    if n == 0:
        return g
    if search_radius is not None:
        limit = search_radius
    else:
        limit = len(g.vertices) if isinstance(g, FiniteMultigraph) else r + 2 + n
    chosen, depth = _outer_edges(g, r, n, limit)
    if len(chosen) < n:
        raise SurgeryError(f"only {len(chosen)} edges lie outside the radius-{r} ball "
                           f"(searched to depth {limit}); need {n}")
    b = _Builder(g, "du")
    carriers = []  # vertices holding a gadget loop
    for i, (e, u, v) in enumerate(chosen):
        (w,) = b.subdivide(e, u, v, 1, i)
        _gadget(b, w, k, i)
        carriers.append(w if k % 2 == 0 else b.new_vertices[-1])
    out = b.build({"move": "delta_u", "r": r, "n": n, "k": k})
    # a loop at depth d is inside the ball of radius d + 1
    depth_out = _depths_of(out, carriers)
    out.metadata["certificate_radius"] = max(depth_out[c] for c in carriers) + 1
    return out


def delta_v(g, n: int, k: int, horizon: int | None = None):
    """Join every pair of components of the depth >= n part by k-2 new edges.

    Components are taken inside the window of the given horizon (default n+1).
    Each component has one of its edges subdivided once per partner and the
    new vertices of each pair are joined by k-2 parallel edges, so degrees
    become k and the radius-n ball is unchanged.
    """
    if k < 3:
        raise SurgeryError("k must be at least 3")
    h = n + 1 if horizon is None else horizon
    if h < n:
        raise SurgeryError("horizon must be at least n")
    win, comps = level_components(g, n, h)
    comps = [c for c in comps if any(win.depth[v] == n for v in c)]
    if len(comps) <= 1:
        return g
    picks = []
    for c in comps:
        members = set(c)
        pick = None
        for x in c:
            for inc in g.incident(x):
                if inc.other in members:
                    pick = (inc.edge, x, inc.other)
                    break
            if pick:
                break
        if pick is None:
            raise SurgeryError(f"the component of {c[0]!r} outside the radius-{n} ball has no edge "
                               f"within horizon {h}")
        picks.append(pick)
    m = len(comps)
    b = _Builder(g, "dv")
    fresh = []
    for i, (e, u, v) in enumerate(picks):
        fresh.append(b.subdivide(e, u, v, m - 1, i))
    slot = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            wi, wj = fresh[i][slot[i]], fresh[j][slot[j]]
            slot[i] += 1
            slot[j] += 1
            for t in range(k - 2):
                b.edge(wi, wj, "bridge", i, j, t)
    out = b.build({"move": "delta_v", "n": n, "k": k, "horizon": h, "components": m})
    out.metadata["components_joined"] = m
    return out


# ------------------------------------------------------------- experiments

def mix_seed(seed: int, i: int) -> int:
    """Per-trial seed: the splitmix64 finalizer applied to seed + (i+1)*golden-gamma."""
    z = (seed + 0x9E3779B97F4A7C15 * (i + 1)) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sample_configuration(k: int, N: int, seed: int) -> FiniteMultigraph:
    """Uniform perfect matching of the k*N half-edges; vertex s // k owns half-edge s."""
    if k < 0 or N < 1:
        raise GraphError("need k >= 0 and N >= 1")
    if (k * N) % 2:
        raise GraphError(f"k*N = {k * N} is odd; no perfect matching exists")
    rng = np.random.Generator(np.random.PCG64(seed))
    perm = rng.permutation(k * N)
    owners = (perm // k).tolist() if k else []
    edges = {i: (owners[2 * i], owners[2 * i + 1]) for i in range(k * N // 2)}
    return FiniteMultigraph(range(N), edges, root=0, name=f"config_k{k}_N{N}")


@dataclass(frozen=True)
class ExperimentConfig:
    k: int
    N: int
    n: int
    R: int
    trials: int
    seed: int

    def validate(self) -> "ExperimentConfig":
        if self.k < 1 or self.N < 1:
            raise GraphError("k and N must be positive")
        if (self.k * self.N) % 2:
            raise GraphError(f"k*N = {self.k * self.N} must be even")
        if not 0 <= self.n <= self.R:
            raise GraphError("need 0 <= n <= R")
        if self.trials < 0:
            raise GraphError("trials must be non-negative")
        if not 0 <= self.seed <= MASK64:
            raise GraphError("seed must be a 64-bit unsigned integer")
        return self


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    rank_ball_R: int
    in_Un: bool
    in_Vn_witness_radius: int | None

    @property
    def in_Vn(self) -> bool:
        return self.in_Vn_witness_radius is not None


def run_trial(cfg: ExperimentConfig, i: int) -> TrialRecord:
    s = mix_seed(cfg.seed, i)
    g = sample_configuration(cfg.k, cfg.N, s)
    rk = rank_lower_bound(g, cfg.R)
    return TrialRecord(i, s, rk, rk >= cfg.n, v_n_witness_radius(g, cfg.n, cfg.R))


def _run_chunk(args):
    cfg, idx = args
    return [run_trial(cfg, i) for i in idx]


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list

    @property
    def frac_U(self) -> float:
        return sum(r.in_Un for r in self.records) / len(self.records) if self.records else float("nan")

    @property
    def frac_V(self) -> float:
        return sum(r.in_Vn for r in self.records) / len(self.records) if self.records else float("nan")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "seed", "rank_ball_R", "in_Un", "in_Vn_witness_radius"])
        for r in self.records:
            w.writerow([r.trial, r.seed, r.rank_ball_R, int(r.in_Un),
                        "" if r.in_Vn_witness_radius is None else r.in_Vn_witness_radius])
        return buf.getvalue()


def run_experiment(cfg: ExperimentConfig, n_jobs: int = 1) -> ExperimentResult:
    """Independent trials; trial i uses seed ``mix_seed(cfg.seed, i)``, output sorted by i."""
    cfg.validate()
    idx = list(range(cfg.trials))
    if n_jobs <= 1 or cfg.trials < 2:
        records = [run_trial(cfg, i) for i in idx]
    else:
        chunks = [(cfg, idx[j::n_jobs]) for j in range(n_jobs)]
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            records = [r for part in ex.map(_run_chunk, chunks) for r in part]
        records.sort(key=lambda r: r.trial)
    return ExperimentResult(cfg, records)
