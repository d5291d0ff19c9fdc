import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wter.generators import (
    gen_c4_free,
    gen_clustered,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_gnp,
    gen_grid,
    gen_path,
    gen_petersen,
    gen_planted,
    gen_star,
    gen_subdivided_clique,
    gen_tree,
    named_instance,
)
from wter.graph import GraphInputError, degree, is_connected
from wter.io import format_edge_list
from wter.solvers import fourcycle_brute, kclique_count


def test_gnp_extremes():
    assert gen_gnp(6, 0, seed=1).m == 0
    assert gen_gnp(6, 1, seed=1).m == 15
    assert gen_gnp(0, 0.5).n == 0


def test_gnp_edge_counts_stay_within_three_sigma():
    mean = 4950 * 0.5
    sigma = math.sqrt(4950 * 0.25)
    for seed in range(20):
        m = gen_gnp(100, 0.5, seed=seed).m
        assert abs(m - mean) <= 3 * sigma


def test_gnp_determinism_and_validation():
    assert format_edge_list(gen_gnp(12, 0.3, seed=9)) == format_edge_list(
        gen_gnp(12, 0.3, seed=9)
    )
    assert format_edge_list(gen_gnp(12, 0.3, seed=9)) != format_edge_list(
        gen_gnp(12, 0.3, seed=10)
    )
    with pytest.raises(GraphInputError):
        gen_gnp(5, 1.5)
    with pytest.raises(GraphInputError):
        gen_gnp(-1, 0.5)


def test_planted_c4_in_edgeless():
    g = gen_planted("c4", gen_gnp(10, 0, seed=0), seed=3)
    assert g.m == 4
    assert fourcycle_brute(g).value is True


def test_planted_triangle_in_tree():
    g = gen_planted("triangle", gen_tree(12, seed=2), seed=2)
    assert kclique_count(g, 3).value >= 1


def test_planted_clique():
    g = gen_planted("kclique", gen_gnp(12, 0.1, seed=4), seed=4, k=4)
    assert kclique_count(g, 4).value >= 1


def test_planted_validation():
    with pytest.raises(GraphInputError):
        gen_planted("c4", gen_path(3))
    with pytest.raises(GraphInputError):
        gen_planted("pentagon", gen_path(8))
    with pytest.raises(GraphInputError):
        gen_planted("kclique", gen_path(8))


def test_c4_free_is_c4_free():
    for seed in range(12):
        g = gen_c4_free(30, seed=seed)
        assert fourcycle_brute(g).value is False


def test_fixed_families():
    assert gen_path(5).m == 4
    assert gen_cycle(5).m == 5
    assert gen_complete(6).m == 15
    star = gen_star(8)
    assert star.m == 7
    assert degree(star, 0) == 7
    assert gen_complete_bipartite(3, 4).m == 12
    assert gen_grid(3, 3).m == 12
    pete = gen_petersen()
    assert pete.n == 10
    assert pete.m == 15
    assert all(degree(pete, v) == 3 for v in range(10))
    with pytest.raises(GraphInputError):
        gen_cycle(2)


def test_subdivided_clique_girth_six():
    g = gen_subdivided_clique(4)
    assert g.n == 4 + 6
    assert g.m == 12
    assert fourcycle_brute(g).value is False


def test_tree_is_a_tree():
    for seed in range(6):
        t = gen_tree(15, seed=seed)
        assert t.m == 14
        assert is_connected(t)


def test_clustered_generator():
    g = gen_clustered(20, 2, 1, 0, seed=1)
    assert not is_connected(g)
    dense = gen_clustered(12, 3, 0.9, 0.05, seed=2)
    assert dense.n == 12


def test_named_instance_specs():
    assert named_instance("petersen").n == 10
    assert named_instance("gnp:15:0.4", seed=7).n == 15
    assert named_instance("grid:2:5").n == 10
    assert named_instance("complete:4").m == 6
    assert named_instance("biclique:2:3").m == 6
    assert named_instance("c4_free:25", seed=1).n >= 1
    planted = named_instance("planted_c4:10:0", seed=5)
    assert fourcycle_brute(planted).value is True
    assert named_instance("subdiv_clique:3").n == 6


def test_named_instance_errors():
    with pytest.raises(GraphInputError):
        named_instance("dodecahedron:5")
    with pytest.raises(GraphInputError):
        named_instance("gnp:abc:0.5")
    with pytest.raises(GraphInputError):
        named_instance("grid:3")


@given(
    st.integers(min_value=1, max_value=30),
    st.sampled_from([0.1, 0.5, 0.9]),
    st.integers(min_value=0, max_value=2**32),
)
@settings(max_examples=40, deadline=None)
def test_gnp_is_simple_and_in_range(n, p, seed):
    g = gen_gnp(n, p, seed=seed)
    assert g.n == n
    assert sum(g.self_loops) == 0
    assert g.m <= n * (n - 1) // 2
