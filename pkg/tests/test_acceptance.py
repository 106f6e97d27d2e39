"""Acceptance criteria 1-9, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line (printed in the terminal summary, or
directly when this file is run as a script).
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product

from endspace.balls import ball, canonical_code, distance, in_basic_open
from endspace.builtins import RegularTree
from endspace.closedsets import ClosedSetSpec, parse_closed_set
from endspace.descriptors import FinitePair, StandardGraphDescriptor
from endspace.ends import component_tree, in_V_n, loop_accumulation_profile, rank_lower_bound
from endspace.genericity import ExperimentConfig, delta_u, delta_v, mix_seed, run_experiment
from endspace.graph import FiniteMultigraph, bfs_depths, degree, is_k_regular_within, rank
from endspace.phe import descriptor_grid, phe_equivalent, realize, stone_structure, structures_isomorphic
from endspace.reductions import doubled_window, gamma, gamma_3, split_all_degree6
from endspace.registry import FIXED, builtin
from endspace.surfaces import (LOCH_NESS_SURFACE, SurfaceClass, enumerate_complexes, parse_pants,
                               surfaces_homeomorphic)

from conftest import random_graph
from oracles import brute_force_isomorphic

RESULTS: list = []

FULL = ClosedSetSpec.full()
TWO_POINT = parse_closed_set("closedset dfa 3 0:0>1,0:1>2,1:0>1,2:1>2 0,1,2")
FIVE_CYL = ClosedSetSpec.cylinders(["000", "001", "01", "10", "111"])
FOUR_STATE = parse_closed_set("closedset dfa 4 0:0>2,0:1>1,1:0>2,2:0>3,2:1>1,3:1>1 0,1,2,3")


@contextmanager
def criterion(n: int, title: str, limit: float):
    t0 = time.perf_counter()
    note = {"detail": ""}
    try:
        yield note
        elapsed = time.perf_counter() - t0
        assert elapsed < limit, f"took {elapsed:.1f}s, budget {limit:.0f}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - t0
        RESULTS.append(f"criterion {n} FAIL {title} ({elapsed:.1f}s): {' '.join(str(exc).split())[:200]}")
        raise
    RESULTS.append(f"criterion {n} PASS {title} ({elapsed:.1f}s, limit {limit:.0f}s) {note['detail']}".rstrip())


# ----------------------------------------------------------------------- 1

def test_criterion_1_metric_soundness():
    with criterion(1, "metric soundness", 10) as note:
        rng = random.Random(2024)
        graphs = [builtin(name) for name in sorted(FIXED)] + [RegularTree(3), RegularTree(4)]
        graphs += [random_graph(rng, rng.randint(1, 9), rng.randint(0, 5)) for _ in range(50)]
        budget = 7
        m = len(graphs)
        D = [[distance(a, b, budget) for b in graphs] for a in graphs]
        for i, j in combinations(range(m), 2):
            assert D[i][j] == D[j][i], f"asymmetric at {i},{j}"
        triples = 0
        for i, j, k in product(range(m), repeat=3):
            a, b, c = D[i][j], D[j][k], D[i][k]
            if a.is_exact and b.is_exact and c.is_exact:
                triples += 1
                assert c.value <= max(a.value, b.value), f"ultrametric fails at {i},{j},{k}"
        # builtins of max degree <= 3, checked on a window
        low = [g for g in graphs[:6] if max(degree(g, v) for v in bfs_depths(g, 6)) <= 3]
        deg2 = [g for g in low if degree(g, g.root) == 2]
        deg3 = [g for g in low if degree(g, g.root) == 3]
        assert deg2 and deg3
        for g2, g3 in product(deg2, deg3):
            d = distance(g2, g3, budget)
            assert d.kind == "exact" and d.value == 1.0
        note["detail"] = f"{m} graphs, {triples} exact triples, {len(deg2) * len(deg3)} degree-2/3 pairs"


# ----------------------------------------------------------------------- 2

def _random_ball(rng):
    while True:
        g = random_graph(rng, rng.randint(1, 8), rng.randint(0, 4))
        b = ball(g, Fraction(rng.randint(0, 8), 2))
        if len(b.depth) <= 8:
            return g, b


def _mutate(rng, g):
    """A nearby graph: one edge added, or the whole graph relabeled."""
    if rng.random() < 0.5:
        perm = list(g.vertices)
        rng.shuffle(perm)
        m = dict(zip(g.vertices, perm))
        return FiniteMultigraph(list(m.values()), {("e", i): (m[u], m[v]) for i, (u, v) in g.edges.items()},
                                root=m[g.root])
    u, v = rng.choice(g.vertices), rng.choice(g.vertices)
    edges = dict(g.edges)
    edges["extra"] = (u, v)
    return FiniteMultigraph(g.vertices, edges, root=g.root)


def test_criterion_2_balls_and_stubs():
    with criterion(2, "ball/stub correctness", 60) as note:
        checked = 0
        for k in range(3, 10):
            fixtures = [RegularTree(k)] + [gamma(c, k) for c in (FULL, TWO_POINT, FIVE_CYL, FOUR_STATE)]
            fixtures.append(realize(StandardGraphDescriptor(float("inf"), FinitePair(2, 2)), str(k)))
            fixtures.append(delta_u(RegularTree(k), 1, 2, k))
            fixtures.append(delta_v(RegularTree(k), 1, k))
            if k == 3:
                fixtures += [builtin("loch_ness"), builtin("fig4_cantor")]
            for g in fixtures:
                b = ball(g, Fraction(1, 2))
                assert len(b.depth) == 1 and b.full_edges == () and b.stubs == {g.root: k}, (k, g)
                checked += 1
        rng = random.Random(99)
        agree = same = 0
        for trial in range(1000):
            g1, b1 = _random_ball(rng)
            if trial % 2:
                g2 = _mutate(rng, g1)
                b2 = ball(g2, b1.radius + (Fraction(1, 4) if b1.eps else 0))
            else:
                g2, _ = _random_ball(rng)
                b2 = ball(g2, b1.radius + (Fraction(1, 4) if b1.eps else 0))
            if len(b2.depth) > 8:
                continue
            codes_equal = canonical_code(b1) == canonical_code(b2)
            iso = brute_force_isomorphic(b1, b2)
            assert codes_equal == iso, f"trial {trial}: code {codes_equal} vs brute force {iso}"
            agree += 1
            same += iso
        assert agree >= 900
        note["detail"] = f"{checked} regular fixtures; {agree} ball pairs ({same} isomorphic)"


# ----------------------------------------------------------------------- 3

def test_criterion_3_reduction_regularity():
    with criterion(3, "reduction regularity", 60) as note:
        for c in (FULL, TWO_POINT, FIVE_CYL, FOUR_STATE):
            for k in range(3, 10):
                assert is_k_regular_within(gamma(c, k), k, 30), f"gamma_{k}({c}) not regular"
        splits = 0
        for c in (FULL, TWO_POINT, FIVE_CYL, FOUR_STATE):
            w = doubled_window(c, 8)
            out, log = split_all_degree6(w, check=False)
            assert all(before == after for _, before, after in log)
            assert rank(out) == rank(w)
            splits += len(log)
        assert splits > 0
        note["detail"] = f"4 sets x k=3..9 to radius 30; {splits} splits Betti-preserving"


# ----------------------------------------------------------------------- 4

def _pruned_trees(depth):
    """Every set of depth-`depth` words whose prefix tree has no dead ends."""
    if depth == 0:
        return [[""]]
    out = []
    for sub in _pruned_trees(depth - 1):
        choices = [["0"], ["1"], ["0", "1"]]
        for pick in product(choices, repeat=len(sub)):
            out.append([w + b for w, bs in zip(sub, pick) for b in bs])
    return out


def _random_pruned(rng, depth):
    level = [""]
    for _ in range(depth):
        level = [w + b for w in level for b in rng.choice(["0", "1", "01"])]
    return level


def _check_end_fidelity(words):
    c = ClosedSetSpec.cylinders(words)
    depth = len(words[0])
    r_max = 2 * depth + 2
    t = component_tree(gamma_3(c), r_max, r_max + 2)
    counts = t.persistent_counts()
    for level in range(1, r_max + 1):
        assert counts[level] == len(c.words_at((level + 1) // 2)), (words, level, counts)
    for br in loop_accumulation_profile(t):
        if br.persistent:
            cum = br.cumulative
            assert all(cum[i + 2] > cum[i] for i in range(len(cum) - 2)), (words, cum)


def test_criterion_4_end_fidelity():
    with criterion(4, "end fidelity", 120) as note:
        exhaustive = _pruned_trees(2) + _pruned_trees(3)
        for words in exhaustive:
            _check_end_fidelity(words)
        rng = random.Random(4)
        for _ in range(100):
            _check_end_fidelity(_random_pruned(rng, 4))
        note["detail"] = f"{len(exhaustive)} exhaustive depth-2/3 sets + 100 random depth-4 sets"


# ----------------------------------------------------------------------- 5

def test_criterion_5_stone_coding():
    with criterion(5, "Stone coding equivalence", 30) as note:
        grid = descriptor_grid(5, 4)
        structs = [stone_structure(d) for d in grid]
        for s in structs:
            s.check()
        pairs = 0
        for (d1, s1), (d2, s2) in product(zip(grid, structs), repeat=2):
            assert structures_isomorphic(s1, s2) == phe_equivalent(d1, d2), (d1, d2)
            pairs += 1
        note["detail"] = f"{len(grid)} descriptors, {pairs} ordered pairs"


# ----------------------------------------------------------------------- 6

def test_criterion_6_density_constructions():
    with criterion(6, "density constructions", 60) as note:
        cases = 0
        for k in (3, 4, 5):
            for i in range(20):
                rng = random.Random(mix_seed(6, 100 * k + i))
                if i % 4 == 0:
                    g = RegularTree(k)
                else:
                    words = _random_pruned(rng, 3)
                    g = gamma(ClosedSetSpec.cylinders(words), k)
                r, n = rng.randint(1, 3), rng.randint(1, 3)
                du = delta_u(g, r, n, k)
                assert in_basic_open(g, r, du)
                cert = du.metadata["certificate_radius"]
                assert rank_lower_bound(du, cert) >= rank_lower_bound(g, r) + n
                assert is_k_regular_within(du, k, min(cert, 6))
                dv = delta_v(g, n, k)
                assert in_basic_open(g, n, dv)
                assert in_V_n(dv, n, n + 6), f"k={k} case {i}: delta_v output not in V_{n}"
                assert is_k_regular_within(dv, k, n + 3)
                cases += 1
        note["detail"] = f"{cases} seeded inputs"


# ----------------------------------------------------------------------- 7

def test_criterion_7_genericity_trend():
    with criterion(7, "genericity trend", 300) as note:
        Ns = (100, 300, 1000)
        table = {}
        for seed in (1, 2, 3):
            for N in Ns:
                res = run_experiment(ExperimentConfig(3, N, 3, 8, 200, seed))
                table[seed, N] = (res.frac_U, res.frac_V)
        for seed in (1, 2, 3):
            fu, fv = table[seed, 1000]
            assert fu >= 0.9 and fv >= 0.9, (seed, fu, fv)
            for a, b in zip(Ns, Ns[1:]):
                for j in (0, 1):
                    assert table[seed, b][j] >= table[seed, a][j] - 0.05, (seed, a, b, j)
        note["detail"] = "; ".join(f"N={N}: U " + "/".join(f"{table[s, N][0]:.3f}" for s in (1, 2, 3))
                                   + " V " + "/".join(f"{table[s, N][1]:.3f}" for s in (1, 2, 3))
                                   for N in Ns)


# ----------------------------------------------------------------------- 8

def test_criterion_8_surfaces():
    with criterion(8, "surface correspondence", 10) as note:
        count = 0
        for pc in enumerate_complexes(4, 2):
            g = pc.to_graph()
            assert all(degree(g, v) == pc.legs[v] + 1 for v in g.vertices)
            assert pc.euler_characteristic() == 2 - 2 * rank(g)
            count += 1
        torus = parse_pants("pants 0 legs=1\nglue 0.1 0.2\nbase 0")
        g = torus.to_graph()
        assert len(g.vertices) == 1 and list(g.edges.values()) == [(0, 0)]
        sphere = parse_pants("pants a legs=0\npants b legs=0\nglue a.1 b.1\nbase a")
        genus2 = parse_pants("pants a legs=2\npants b legs=2\nglue a.1 b.1\nglue a.2 b.2\nglue a.3 b.3\nbase a")
        assert (torus.genus(), sphere.genus(), genus2.genus()) == (1, 0, 2)
        assert surfaces_homeomorphic(torus, torus) and not surfaces_homeomorphic(torus, sphere)
        assert not surfaces_homeomorphic(genus2, torus)
        assert surfaces_homeomorphic(LOCH_NESS_SURFACE, SurfaceClass(float("inf"), FinitePair(1, 1)))
        note["detail"] = f"{count} complexes"


# ----------------------------------------------------------------------- 9

def test_criterion_9_fig4_fixtures():
    with criterion(9, "fig4 builtin fixtures", 30) as note:
        first = builtin("fig4_first")
        ranks = [rank_lower_bound(first, r) for r in range(0, 25)]
        assert ranks[-1] == 3 and ranks[-10:] == [3] * 10
        t = component_tree(first, 12, 14)
        assert t.persistent_counts()[-6:] == [1] * 6
        (branch,) = [b for b in loop_accumulation_profile(t) if b.persistent]
        assert branch.cumulative[-1] == branch.cumulative[-6]

        middle = builtin("fig4_middle")
        t = component_tree(middle, 12, 14)
        counts = t.persistent_counts()
        # a truncation of {1/n} u {0} at level i: the limit point plus the points split off so far
        assert counts == [1 + (i + 1) // 2 for i in range(13)], counts
        growing = [b for b in loop_accumulation_profile(t) if b.persistent
                   and b.cumulative[-1] > b.cumulative[-3]]
        assert len(growing) == 1

        cantor = builtin("fig4_cantor")
        t = component_tree(cantor, 9, 11)
        halves = {1: [], 2: []}
        for level in range(1, 10):
            nodes = t.persistent(level)
            for side in (1, 2):
                halves[side].append(sum(1 for n in nodes if n.representative[:2] == ("a", side)))
        tree_half, loop_half = halves[1], halves[2]
        assert all(b == 2 * a for a, b in zip(tree_half, tree_half[1:])), tree_half
        assert all(b == 2 * a for a, b in zip(loop_half, loop_half[2:])), loop_half
        assert tree_half[-1] + loop_half[-1] == t.persistent_counts()[9]
        for br in loop_accumulation_profile(t):
            if not br.persistent:
                continue
            rep = t.levels[-1][br.path[-1]].representative
            cum = br.cumulative
            if rep[:2] == ("a", 1):
                assert cum[-1] == cum[1]
            elif rep[:2] == ("a", 2):
                assert all(cum[i + 2] > cum[i] for i in range(1, len(cum) - 2))
        note["detail"] = f"tree half {tree_half}, loop half {loop_half}"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:  # noqa: BLE001 - the line is already recorded
                pass
    print("\n".join(RESULTS))
