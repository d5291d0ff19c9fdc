import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs
from wter.generators import (
    gen_complete,
    gen_cycle,
    gen_gnp,
    gen_path,
    gen_petersen,
    gen_star,
    gen_tree,
)
from wter.graph import Graph, GraphBuilder
from wter.solvers import (
    SolverCapError,
    check_clique,
    check_dominating_set,
    check_embedding,
    check_fourcycle,
    check_matching,
    check_vertex_cover,
    fourcycle_brute,
    fourcycle_enum,
    kclique_bruteforce,
    kclique_count,
    mcm_bruteforce,
    mcm_exact,
    mds_bruteforce,
    mds_exact,
    mvc_bruteforce,
    mvc_exact,
    subgraph_iso_bruteforce,
    subgraph_iso_detect,
)

DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def grid_design_incidence() -> Graph:
    """Bipartite point-line incidence of the 3x3 affine plane: 9 points,
    12 lines, girth 6, so it is 4-cycle-free while fairly dense."""
    edges = []
    lines = [[(x, (a * x + b) % 3) for x in range(3)] for a in range(3) for b in range(3)]
    lines += [[(c, y) for y in range(3)] for c in range(3)]
    for li, pts in enumerate(lines):
        for x, y in pts:
            edges.append((3 * x + y, 9 + li))
    return Graph.from_edges(21, edges)


def test_mcm_frozen_values(k4, c5, petersen):
    assert mcm_exact(k4).value == 2
    assert mcm_exact(c5).value == 2
    assert mcm_exact(petersen).value == 5


def test_mvc_frozen_values(k4, c5):
    assert mvc_exact(k4).value == 3
    assert mvc_exact(c5).value == 3
    star = gen_star(8)
    ans = mvc_exact(star)
    assert ans.value == 1
    assert ans.witness == (0,)


def test_mds_frozen_values():
    assert mds_exact(gen_star(8)).witness == (0,)
    assert mds_exact(gen_cycle(6)).value == 2
    edgeless = Graph.from_edges(4, [])
    ans = mds_exact(edgeless)
    assert ans.value == 4
    assert ans.witness == (0, 1, 2, 3)


def test_kclique_frozen_values(c5):
    assert kclique_count(gen_complete(5), 3).value == 10
    assert kclique_count(gen_complete(5), 3).witness == (0, 1, 2)
    assert kclique_count(c5, 3).value == 0
    assert kclique_count(c5, 3).witness is None
    assert kclique_count(DIAMOND, 3).value == 2
    assert kclique_count(gen_complete(4), 5).value == 0
    assert kclique_count(gen_path(3), 1).value == 3
    assert kclique_count(gen_petersen(), 3).value == 0


def test_siso_frozen_values(k4, c4):
    assert subgraph_iso_detect(k4, c4).value is True
    assert subgraph_iso_detect(gen_star(6), c4).value is False


def test_siso_diamond_double_oracle():
    for seed in range(6):
        host = gen_gnp(10, 0.5, seed=seed)
        fast = subgraph_iso_detect(host, DIAMOND).value
        assert fast == subgraph_iso_bruteforce(host, DIAMOND)


def test_fourcycle_frozen_values(c4):
    found = fourcycle_brute(c4)
    assert found.value is True
    assert check_fourcycle(c4, found.witness)
    assert fourcycle_brute(gen_tree(10, seed=4)).value is False
    assert fourcycle_brute(grid_design_incidence()).value is False


def test_grid_design_shape():
    g = grid_design_incidence()
    assert g.n == 21
    assert g.m == 36
    assert subgraph_iso_detect(g, gen_cycle(4)).value is False


def test_mvc_forces_self_loop_endpoints():
    b = GraphBuilder(3)
    b.add_edge(1, 2)
    b.add_self_loops(0, 1)
    g = b.build()
    ans = mvc_exact(g)
    assert ans.value == 2
    assert 0 in ans.witness


def test_checkers_accept_and_reject(k4, c4):
    assert check_matching(k4, ((0, 1), (2, 3)))
    assert not check_matching(k4, ((0, 1), (1, 2)))
    assert check_vertex_cover(k4, (0, 1, 2))
    assert not check_vertex_cover(k4, (0,))
    assert check_dominating_set(gen_cycle(6), (0, 3))
    assert not check_dominating_set(gen_cycle(6), (0,))
    assert check_clique(DIAMOND, (0, 1, 2))
    assert not check_clique(DIAMOND, (0, 1, 3))
    assert check_embedding(k4, c4, (0, 1, 2, 3))
    assert not check_embedding(k4, c4, (0, 0, 1, 2))
    assert check_fourcycle(c4, (0, 1, 2, 3))
    assert not check_fourcycle(c4, (0, 1, 3, 2))


def test_loop_cover_checker():
    b = GraphBuilder(2)
    b.add_edge(0, 1)
    b.add_self_loops(0, 1)
    g = b.build()
    assert check_vertex_cover(g, (0,))
    assert not check_vertex_cover(g, (1,))


def test_caps_raise():
    big = gen_gnp(21, 0.2, seed=0)
    with pytest.raises(SolverCapError):
        mcm_bruteforce(big)
    with pytest.raises(SolverCapError):
        mvc_bruteforce(gen_gnp(17, 0.2, seed=0))
    with pytest.raises(SolverCapError):
        mds_bruteforce(gen_gnp(17, 0.2, seed=0))
    with pytest.raises(SolverCapError):
        mvc_exact(gen_complete(8), core_cap=4)
    with pytest.raises(SolverCapError):
        mds_exact(gen_cycle(8), core_cap=3)
    with pytest.raises(SolverCapError):
        subgraph_iso_bruteforce(gen_gnp(13, 0.3, seed=0), gen_cycle(4))
    with pytest.raises(SolverCapError):
        fourcycle_enum(gen_gnp(25, 0.1, seed=0))


def _max_independent_set(g: Graph) -> int:
    masks = g.adj_masks
    best = 0
    for bits in range(1 << g.n):
        if all(not (bits >> v & 1) or not (masks[v] & bits) for v in range(g.n)):
            best = max(best, bits.bit_count())
    return best


@given(graphs(min_n=1, max_n=9))
@settings(max_examples=60, deadline=None)
def test_gallai_identity(g):
    assert mvc_exact(g).value + _max_independent_set(g) == g.n


@given(graphs(min_n=1, max_n=10))
@settings(max_examples=60, deadline=None)
def test_mcm_agrees_with_bruteforce(g):
    assert mcm_exact(g).value == mcm_bruteforce(g)


@given(graphs(min_n=1, max_n=10))
@settings(max_examples=60, deadline=None)
def test_mvc_agrees_with_bruteforce(g):
    value, _ = mvc_bruteforce(g)
    assert mvc_exact(g).value == value


@given(graphs(min_n=1, max_n=10))
@settings(max_examples=60, deadline=None)
def test_mds_agrees_with_bruteforce(g):
    value, _ = mds_bruteforce(g)
    assert mds_exact(g).value == value


@given(graphs(min_n=1, max_n=10), st.sampled_from([3, 4]))
@settings(max_examples=60, deadline=None)
def test_kclique_agrees_with_bruteforce(g, k):
    assert kclique_count(g, k).value == kclique_bruteforce(g, k)


@given(graphs(min_n=1, max_n=8), st.sampled_from([0, 1, 2]))
@settings(max_examples=40, deadline=None)
def test_siso_agrees_with_bruteforce(g, idx):
    pattern = [gen_cycle(3), gen_cycle(4), DIAMOND][idx]
    assert subgraph_iso_detect(g, pattern).value == subgraph_iso_bruteforce(g, pattern)


@given(graphs(min_n=1, max_n=12))
@settings(max_examples=60, deadline=None)
def test_fourcycle_agrees_with_enum(g):
    assert fourcycle_brute(g).value == fourcycle_enum(g)


def test_answer_shape(k4):
    ans = mcm_exact(k4)
    assert ans.problem == "mcm"
    assert check_matching(k4, ans.witness)
    assert len(ans.witness) == ans.value
