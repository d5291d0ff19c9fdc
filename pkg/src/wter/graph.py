"""Immutable undirected graphs with counted self-loops, plus cut primitives.

Conventions used throughout the package:

* Vertices are dense 0-based integers.  Constructions that add vertices
  append them at the top of the id range and record the ranges they used.
* A self-loop contributes 1 to its endpoint's degree (and hence to volume)
  and 0 to any boundary.  Callers that want the weight-2 convention can
  pass ``loop_weight=2`` to :func:`degree` / :func:`volume`.
* ``m`` counts each edge once; a self-loop counts once.
* Graphs are immutable; every mutating operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class GraphInputError(ValueError):
    """Invalid vertex id, malformed edge, or unusable construction input."""


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    self_loops: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphInputError("vertex count must be non-negative")
        if len(self.adjacency) != self.n or len(self.self_loops) != self.n:
            raise GraphInputError("adjacency/self-loop arrays must have length n")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        loops: Iterable[tuple[int, int]] | None = None,
    ) -> "Graph":
        """Build from an edge list; ``loops`` is (vertex, count) pairs."""
        b = GraphBuilder(n)
        for u, v in edges:
            if u == v:
                b.add_self_loops(u, 1)
            else:
                b.add_edge(u, v)
        for v, c in loops or ():
            b.add_self_loops(v, c)
        return b.build()

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2 + sum(self.self_loops)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbor bitmasks (self-loops excluded); for n up to word-burst sizes."""
        masks = []
        for a in self.adjacency:
            mask = 0
            for w in a:
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphInputError(f"vertex {v} out of range [0, {self.n})")

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            return self.self_loops[u] > 0
        return v in self.neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """Non-loop edges as sorted (u, v) pairs with u < v."""
        out = []
        for u, a in enumerate(self.adjacency):
            for v in a:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def simple_edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2


class GraphBuilder:
    """Mutable accumulator for :class:`Graph`; duplicate edges collapse."""

    def __init__(self, n: int = 0) -> None:
        if n < 0:
            raise GraphInputError("vertex count must be non-negative")
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._loops: list[int] = [0] * n

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphBuilder":
        b = cls(g.n)
        for u, a in enumerate(g.adjacency):
            b._adj[u] = set(a)
        b._loops = list(g.self_loops)
        return b

    @property
    def n(self) -> int:
        return len(self._adj)

    def add_vertices(self, count: int) -> int:
        """Append ``count`` fresh vertices; returns the first new id."""
        if count < 0:
            raise GraphInputError("cannot add a negative number of vertices")
        first = len(self._adj)
        for _ in range(count):
            self._adj.append(set())
            self._loops.append(0)
        return first

    def add_edge(self, u: int, v: int) -> bool:
        """Add edge {u, v}; returns False if it was already present."""
        if u == v:
            raise GraphInputError("use add_self_loops for loops")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphInputError(f"edge ({u}, {v}) out of range [0, {self.n})")
        if v in self._adj[u]:
            return False
        self._adj[u].add(v)
        self._adj[v].add(u)
        return True

    def add_self_loops(self, v: int, count: int = 1) -> None:
        if not 0 <= v < self.n:
            raise GraphInputError(f"vertex {v} out of range [0, {self.n})")
        if count < 0:
            raise GraphInputError("self-loop count must be non-negative")
        self._loops[v] += count

    def build(self) -> Graph:
        return Graph(
            n=self.n,
            adjacency=tuple(tuple(sorted(a)) for a in self._adj),
            self_loops=tuple(self._loops),
        )


@dataclass(frozen=True)
class Cut:
    """A vertex subset of a fixed graph; the cut is (members, complement)."""

    graph: Graph = field(repr=False)
    members: frozenset[int]

    def __post_init__(self) -> None:
        for v in self.members:
            if not 0 <= v < self.graph.n:
                raise GraphInputError(f"cut member {v} out of range")

    def complement(self) -> "Cut":
        return Cut(self.graph, frozenset(range(self.graph.n)) - self.members)

    def is_proper(self) -> bool:
        return 0 < len(self.members) < self.graph.n

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


def _as_vertex_set(g: Graph, s) -> frozenset[int]:
    members = s.members if isinstance(s, Cut) else frozenset(s)
    for v in members:
        if not 0 <= v < g.n:
            raise GraphInputError(f"vertex {v} out of range [0, {g.n})")
    return members


def degree(g: Graph, v: int, loop_weight: int = 1) -> int:
    """Degree of v; each self-loop adds ``loop_weight`` (default 1)."""
    g.check_vertex(v)
    return len(g.adjacency[v]) + loop_weight * g.self_loops[v]


def volume(g: Graph, s, loop_weight: int = 1) -> int:
    """Sum of degrees over the vertex set ``s`` (iterable or Cut)."""
    members = _as_vertex_set(g, s)
    return sum(len(g.adjacency[v]) + loop_weight * g.self_loops[v] for v in members)


def boundary(g: Graph, s) -> int:
    """Number of edges with exactly one endpoint in ``s`` (loops never count)."""
    members = _as_vertex_set(g, s)
    total = 0
    for v in members:
        for w in g.adjacency[v]:
            if w not in members:
                total += 1
    return total


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``vertices`` plus the old-id -> new-id map."""
    vs = sorted(_as_vertex_set(g, vertices))
    index = {v: i for i, v in enumerate(vs)}
    b = GraphBuilder(len(vs))
    for v in vs:
        b.add_self_loops(index[v], g.self_loops[v])
        for w in g.adjacency[v]:
            if v < w and w in index:
                b.add_edge(index[v], index[w])
    return b.build(), index


def add_twin(g: Graph, v: int) -> tuple[Graph, int]:
    """Append a degree-1 vertex attached to v; returns (graph, twin id)."""
    g.check_vertex(v)
    b = GraphBuilder.from_graph(g)
    t = b.add_vertices(1)
    b.add_edge(v, t)
    return b.build(), t


def add_self_loops(g: Graph, counts: dict[int, int]) -> Graph:
    b = GraphBuilder.from_graph(g)
    for v, c in counts.items():
        b.add_self_loops(v, c)
    return b.build()


def strip_self_loops(g: Graph, counts: dict[int, int] | None = None) -> Graph:
    """Remove ``counts`` self-loops per vertex (all loops when None)."""
    loops = list(g.self_loops)
    if counts is None:
        loops = [0] * g.n
    else:
        for v, c in counts.items():
            g.check_vertex(v)
            if loops[v] < c:
                raise GraphInputError(f"vertex {v} has fewer than {c} self-loops")
            loops[v] -= c
    return Graph(n=g.n, adjacency=g.adjacency, self_loops=tuple(loops))


def subdivide_edge(g: Graph, u: int, v: int, t: int) -> Graph:
    """Replace edge {u, v} by a path through t fresh internal vertices.

    The internal vertices get ids [g.n, g.n + t) in path order from u to v.
    """
    if t < 1:
        raise GraphInputError("subdivision needs at least one internal vertex")
    if u == v or not g.has_edge(u, v):
        raise GraphInputError(f"edge ({u}, {v}) not present")
    b = GraphBuilder(g.n)
    for a, nb in enumerate(g.adjacency):
        b.add_self_loops(a, g.self_loops[a])
        for w in nb:
            if a < w and (a, w) != (min(u, v), max(u, v)):
                b.add_edge(a, w)
    first = b.add_vertices(t)
    chain = [u, *range(first, first + t), v]
    for a, c in zip(chain, chain[1:]):
        b.add_edge(a, c)
    return b.build()


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        q = deque([s])
        while q:
            v = q.popleft()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def rooted_spanning_tree(g: Graph, root: int = 0) -> list[int]:
    """BFS spanning tree as a parent array with parent[root] == root.

    Neighbors are visited in ascending id order, so the tree is canonical.
    Raises on disconnected input; use :func:`spanning_forest` per component.
    """
    g.check_vertex(root)
    parent = [-1] * g.n
    parent[root] = root
    q = deque([root])
    reached = 1
    while q:
        v = q.popleft()
        for w in g.adjacency[v]:
            if parent[w] == -1:
                parent[w] = v
                reached += 1
                q.append(w)
    if reached != g.n:
        raise GraphInputError("graph is disconnected; spanning tree undefined")
    return parent


def spanning_forest(g: Graph) -> list[int]:
    """Per-component BFS trees, each rooted at its smallest vertex."""
    parent = [-1] * g.n
    for comp in connected_components(g):
        root = comp[0]
        parent[root] = root
        q = deque([root])
        while q:
            v = q.popleft()
            for w in g.adjacency[v]:
                if parent[w] == -1:
                    parent[w] = v
                    q.append(w)
    return parent
