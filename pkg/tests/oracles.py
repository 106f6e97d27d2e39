"""Independent reference implementations used as test oracles."""

from collections import Counter
from itertools import permutations

from endspace.balls import ball


def _edge_multiset(b, m):
    return Counter(tuple(sorted((m[u], m[v]), key=repr)) for u, v in b.full_edges)


def brute_force_isomorphic(b1, b2) -> bool:
    """Search every root-fixing bijection; compare edge multisets and stub counts."""
    if b1.key != b2.key or len(b1.depth) != len(b2.depth) or len(b1.full_edges) != len(b2.full_edges):
        return False
    rest1 = [v for v in b1.depth if v != b1.root]
    rest2 = [v for v in b2.depth if v != b2.root]
    target = _edge_multiset(b2, {v: v for v in b2.depth})
    stubs2 = {v: b2.stubs.get(v, 0) for v in b2.depth}
    for perm in permutations(rest2):
        m = dict(zip(rest1, perm))
        m[b1.root] = b2.root
        if any(b1.stubs.get(v, 0) != stubs2[m[v]] for v in b1.depth):
            continue
        if _edge_multiset(b1, m) == target:
            return True
    return False


def naive_ball_counts(g, h):
    """(vertices, full edges, stubs) of the half-step-h ball by direct enumeration on a finite graph."""
    from endspace.graph import bfs_depths
    d = bfs_depths(g)
    verts = [v for v in g.vertices if v in d and 2 * d[v] <= h]
    full = stubs = 0
    for e, (u, v) in g.edges.items():
        if u not in d:
            continue
        far = d[u] + d[v] + 1  # twice the depth of the farthest point of the edge
        if far < h or (far == h and d[u] != d[v]):
            full += 1
        else:
            stubs += (2 * d[u] < h) + (2 * d[v] < h)
    return len(verts), full, stubs


def naive_rank_of_ball(g, h):
    n, m, _ = naive_ball_counts(g, h)
    return m - n + 1


def ball_at(g, h):
    from fractions import Fraction
    return ball(g, Fraction(h, 2))
