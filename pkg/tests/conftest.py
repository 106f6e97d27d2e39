import random

import pytest
from hypothesis import settings, strategies as st

from endspace.graph import FiniteMultigraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_graph(rng: random.Random, n: int, m: int, loops: bool = True, name: str = "rand") -> FiniteMultigraph:
    """Connected random multigraph on n vertices: a random spanning tree plus m extra edges."""
    edges = {}
    for v in range(1, n):
        edges[len(edges)] = (rng.randrange(v), v)
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        edges[len(edges)] = (u, v)
    return FiniteMultigraph(range(n), edges, root=0, name=name)


@st.composite
def finite_graphs(draw, max_vertices: int = 7, max_extra: int = 5):
    n = draw(st.integers(1, max_vertices))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_extra))
    edges = {i: (p, i + 1) for i, p in enumerate(parents)}
    for u, v in extra:
        edges[len(edges)] = (u, v)
    return FiniteMultigraph(range(n), edges, root=0)


@pytest.fixture
def fig2_graph():
    # v1: two loops and one edge; v2-v3 joined three times; v4 pendant on v3
    return FiniteMultigraph(
        ["v1", "v2", "v3", "v4"],
        {"l1": ("v1", "v1"), "l2": ("v1", "v1"), "a": ("v1", "v2"),
         "m1": ("v2", "v3"), "m2": ("v2", "v3"), "m3": ("v2", "v3"), "t": ("v3", "v4")},
        root="v1")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
