from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from endspace.balls import in_basic_open
from endspace.builtins import Ray, RegularTree
from endspace.closedsets import ClosedSetSpec
from endspace.ends import in_V_n, rank_lower_bound
from endspace.genericity import (ExperimentConfig, SurgeryError, delta_u, delta_v, mix_seed, run_experiment,
                                 sample_configuration)
from endspace.graph import GraphError, is_k_regular_within, materialize
from endspace.reductions import gamma


def test_k2_single_vertex_is_a_loop():
    g = sample_configuration(2, 1, 5)
    assert list(g.edges.values()) == [(0, 0)]


def test_k3_two_vertices_shape_frequencies():
    # 15 matchings of 6 half-edges: 6 give the theta graph, 9 an edge with a loop at each end
    shapes = Counter()
    for s in range(3000):
        g = sample_configuration(3, 2, mix_seed(11, s))
        shapes["theta" if all(u != v for u, v in g.edges.values()) else "dumbbell"] += 1
    assert set(shapes) == {"theta", "dumbbell"}
    assert abs(shapes["theta"] / 3000 - 6 / 15) < 0.03


def test_sampler_deterministic_and_regular():
    a, b = sample_configuration(3, 100, 42), sample_configuration(3, 100, 42)
    assert a.edges == b.edges
    assert all(a.degree(v) == 3 for v in a.vertices)
    assert sample_configuration(3, 100, 43).edges != a.edges
    with pytest.raises(GraphError):
        sample_configuration(3, 5, 1)


def test_mix_seed_spreads():
    seeds = {mix_seed(1, i) for i in range(1000)}
    assert len(seeds) == 1000 and all(0 <= s < 2 ** 64 for s in seeds)


def test_delta_u_ray():
    g = Ray()
    out = delta_u(g, 2, 3, 3)
    assert in_basic_open(g, 2, out)
    assert rank_lower_bound(out, out.metadata["certificate_radius"]) >= 3
    assert delta_u(g, 2, 0, 3) is g


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7])
def test_delta_u_keeps_regularity(k):
    g = RegularTree(k)
    out = delta_u(g, 2, 2, k)
    assert in_basic_open(g, 2, out) and is_k_regular_within(out, k, 5)
    assert rank_lower_bound(out, out.metadata["certificate_radius"]) >= 2


def test_delta_u_finite_graph_without_room():
    g = materialize(RegularTree(3), 2)
    with pytest.raises(SurgeryError):
        delta_u(g, 2, 3, 3)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_delta_v_tree(k):
    g = RegularTree(k)
    out = delta_v(g, 1, k)
    assert out.metadata["components_joined"] == k
    assert in_basic_open(g, 1, out) and is_k_regular_within(out, k, 6)
    assert in_V_n(out, 1, 6)
    assert not in_V_n(g, 1, 6)


def test_delta_v_single_component_is_identity():
    g = Ray()
    assert delta_v(g, 2, 3) is g


def test_delta_v_on_gamma():
    g = gamma(ClosedSetSpec.full(), 3)
    out = delta_v(g, 3, 3)
    assert in_basic_open(g, 3, out) and in_V_n(out, 3, 8)


@settings(max_examples=15)
@given(st.integers(3, 6), st.integers(0, 3), st.integers(1, 3))
def test_delta_u_properties(k, r, n):
    g = RegularTree(k)
    out = delta_u(g, r, n, k)
    assert in_basic_open(g, r, out)
    assert rank_lower_bound(out, out.metadata["certificate_radius"]) >= n


def test_experiment_determinism_and_csv():
    cfg = ExperimentConfig(3, 50, 2, 5, 10, 1)
    a, b = run_experiment(cfg), run_experiment(cfg)
    assert a.to_csv() == b.to_csv()
    assert a.to_csv().splitlines()[0] == "trial,seed,rank_ball_R,in_Un,in_Vn_witness_radius"
    assert run_experiment(cfg, n_jobs=2).to_csv() == a.to_csv()


def test_experiment_edge_cases():
    assert run_experiment(ExperimentConfig(3, 50, 0, 4, 5, 3)).frac_U == 1.0
    empty = run_experiment(ExperimentConfig(3, 50, 2, 4, 0, 3))
    assert empty.records == [] and empty.to_csv().count("\n") == 1
    with pytest.raises(GraphError):
        ExperimentConfig(3, 51, 2, 4, 1, 1).validate()
    with pytest.raises(GraphError):
        ExperimentConfig(3, 50, 5, 4, 1, 1).validate()
