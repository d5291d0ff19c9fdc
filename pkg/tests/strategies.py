"""Shared hypothesis strategies: small graphs in various flavors."""

from hypothesis import strategies as st

from wter.graph import Graph, GraphBuilder


@st.composite
def graphs(draw, min_n=1, max_n=10, allow_loops=False, connected=False):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picks = draw(st.lists(st.sampled_from(all_pairs), unique=True)) if all_pairs else []
    b = GraphBuilder(n)
    for u, v in picks:
        b.add_edge(u, v)
    if connected:
        # chain the vertices so every draw is connected
        for v in range(1, n):
            b.add_edge(v - 1, v)
    if allow_loops:
        for v in draw(st.lists(st.integers(min_value=0, max_value=n - 1), max_size=3)):
            b.add_self_loops(v, 1)
    return b.build()


@st.composite
def graphs_with_cut(draw, min_n=2, max_n=10):
    g = draw(graphs(min_n=min_n, max_n=max_n))
    members = draw(
        st.sets(st.integers(min_value=0, max_value=g.n - 1), min_size=1, max_size=g.n - 1)
    )
    return g, frozenset(members)


def seeds():
    return st.integers(min_value=0, max_value=2**63 - 1)
