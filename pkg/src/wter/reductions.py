"""Worst-case to expander-case self-reductions.

Each ``wter_*`` function maps an arbitrary input graph to a well-connected
instance of the same problem whose answer determines the original answer
through a recorded correction:

==================  =============================  =======================
problem             instance transform             answer correction
==================  =============================  =======================
maximum matching    standard layer + twins         subtract 5n
vertex cover        degree-bounded layer + twins   subtract layer size
k-clique count      k-partite blow-up + layer      divide by k!
subgraph pattern    layer + edge subdivision       none (bool preserved)
4-cycle             pattern route with C4          none (bool preserved)
dominating set      sampled copies + layer + twins subtract layer size
==================  =============================  =======================

:func:`recover` applies the correction recorded in a
:class:`ReductionOutput`, refusing tag mismatches and impossible values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .graph import (
    Graph,
    GraphBuilder,
    GraphInputError,
    connected_components,
    induced_subgraph,
    rooted_spanning_tree,
)
from .layer import LayerConfig, LayerMode, LayerResult, as_fraction, attach_layer, frac_ceil
from .rng import SplitMix64, derive_seed
from .solvers import SolverAnswer

MDS_RESAMPLE_LIMIT = 32

_SALT_MCM = 0x3C3C01
_SALT_MVC = 0x3C3C02
_SALT_KCLIQUE = 0x3C3C03
_SALT_SISO = 0x3C3C04
_SALT_MDS_SAMPLE = 0x3C3C05
_SALT_MDS_LAYER = 0x3C3C06


class ProblemTag(Enum):
    MCM = "mcm"
    MVC = "mvc"
    KCLIQUE = "kclique"
    SUBGRAPH_ISO = "subgraph_iso"
    FOURCYCLE = "fourcycle"
    MDS = "mds"


class PatternError(GraphInputError):
    """Pattern graph outside the supported family."""


class IdentityViolation(AssertionError):
    """A recovered answer contradicts the reduction's exact identity."""


@dataclass(frozen=True)
class ReductionOutput:
    """A reduced instance plus everything needed to undo it.

    ``additive`` is subtracted from the reduced optimum; ``multiplicative``
    divides the reduced count.  Exactly one is non-trivial per problem.
    """

    problem: ProblemTag
    graph: Graph
    source_n: int
    additive: int = 0
    multiplicative: int = 1
    layer_range: tuple[int, int] | None = None
    twin_range: tuple[int, int] | None = None
    partite_parts: tuple[tuple[int, int], ...] | None = None
    copy_range: tuple[int, int] | None = None
    copy_of: tuple[int, ...] | None = None
    subdivision: tuple[tuple[int, int, int, int], ...] | None = None
    pattern: Graph | None = None
    k: int | None = None
    seed: int = 0
    flags: dict = field(default_factory=dict)

    @property
    def layer_vertices(self) -> tuple[int, ...]:
        if self.layer_range is None:
            return ()
        return tuple(range(*self.layer_range))


def _attach_twins(g: Graph, vertices) -> tuple[Graph, tuple[int, int]]:
    """Append one degree-1 partner per listed vertex (ascending order)."""
    vs = sorted(vertices)
    b = GraphBuilder.from_graph(g)
    first = b.add_vertices(len(vs))
    for i, v in enumerate(vs):
        b.add_edge(v, first + i)
    return b.build(), (first, first + len(vs))


# --------------------------------------------------------------- matching


def wter_mcm(g: Graph, c: int = 4, seed: int = 0) -> ReductionOutput:
    """Matching self-reduction: standard layer plus a pendant twin per
    layer vertex.  Every twin edge is forced into some maximum matching,
    so the optimum rises by exactly the layer size (5n)."""
    if g.n < 1:
        raise GraphInputError("need at least one vertex")
    layer = attach_layer(
        g, LayerConfig(mode=LayerMode.STANDARD, c=c, seed=derive_seed(seed, _SALT_MCM))
    )
    gp, twin_range = _attach_twins(layer.graph, layer.layer_vertices)
    return ReductionOutput(
        problem=ProblemTag.MCM,
        graph=gp,
        source_n=g.n,
        additive=layer.layer_size,
        layer_range=layer.layer_range,
        twin_range=twin_range,
        seed=seed,
    )


# ------------------------------------------------------------ vertex cover


def wter_mvc(g: Graph, c: int = 4, seed: int = 0) -> ReductionOutput:
    """Vertex cover self-reduction: degree-bounded layer plus twins.
    Twins force every layer vertex into some minimum cover, raising the
    optimum by exactly the layer size."""
    if g.n < 1:
        raise GraphInputError("need at least one vertex")
    layer = attach_layer(
        g,
        LayerConfig(
            mode=LayerMode.DEGREE_BOUNDED, c=c, seed=derive_seed(seed, _SALT_MVC)
        ),
    )
    gp, twin_range = _attach_twins(layer.graph, layer.layer_vertices)
    return ReductionOutput(
        problem=ProblemTag.MVC,
        graph=gp,
        source_n=g.n,
        additive=layer.layer_size,
        layer_range=layer.layer_range,
        twin_range=twin_range,
        seed=seed,
    )


# ------------------------------------------------------------ clique count


def kpartite_blowup(g: Graph, k: int) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """k copies of V(g); copies u_i, v_j adjacent iff uv is an edge and
    the copies live in different parts.  Self-loops do not lift (a loop
    would need u adjacent to itself across parts, which creates k-cliques
    that have no preimage), so they are dropped.

    Each k-clique of g lifts to exactly k! transversal cliques, and every
    k-clique of the blow-up is such a lift.
    """
    if k < 2:
        raise GraphInputError("blow-up needs k >= 2")
    n = g.n
    b = GraphBuilder(n * k)
    for u, v in g.edges():
        for i in range(k):
            for j in range(k):
                if i != j:
                    b.add_edge(i * n + u, j * n + v)
    parts = tuple((i * n, (i + 1) * n) for i in range(k))
    return b.build(), parts


def wter_kclique(g: Graph, k: int, c: int = 4, seed: int = 0) -> ReductionOutput:
    """Clique-counting self-reduction: k-partite blow-up, then a layer
    attached to the first part.  Layer vertices are adjacent only to part
    one, an independent set, so no new k-clique appears (k >= 3) and the
    count is exactly k! times the original."""
    if g.n < 1:
        raise GraphInputError("need at least one vertex")
    if k < 3:
        raise GraphInputError("clique reduction needs k >= 3")
    blow, parts = kpartite_blowup(g, k)
    layer = attach_layer(
        blow,
        LayerConfig(
            mode=LayerMode.SUBSET_ATTACHED,
            c=c,
            attach_set=tuple(range(parts[0][0], parts[0][1])),
            seed=derive_seed(seed, _SALT_KCLIQUE),
        ),
    )
    return ReductionOutput(
        problem=ProblemTag.KCLIQUE,
        graph=layer.graph,
        source_n=g.n,
        multiplicative=math.factorial(k),
        layer_range=layer.layer_range,
        partite_parts=parts,
        k=k,
        seed=seed,
    )


# ----------------------------------------------------- subgraph isomorphism


def _validate_pattern(h: Graph) -> None:
    if h.n < 3:
        raise PatternError("pattern needs at least 3 vertices")
    if any(h.self_loops):
        raise PatternError("pattern must be loop-free")
    degs = [len(a) for a in h.adjacency]
    if any(d == 0 for d in degs):
        raise PatternError("pattern has an isolated vertex")
    if any(d == 1 for d in degs):
        raise PatternError("pattern has a pendant vertex")


def wter_subgraph_iso(g: Graph, h: Graph, c: int = 4, seed: int = 0) -> ReductionOutput:
    """Pattern-detection self-reduction for patterns of minimum degree 2.

    Standard layer first; then every edge between the original graph and
    the layer is subdivided with |V(h)| internal vertices.  Any copy of h
    that used a layer vertex would have to live inside one subdivided
    path, but a path on |V(h)| + 2 vertices cannot contain a
    minimum-degree-2 pattern on |V(h)| vertices, so detection is
    unchanged.
    """
    if g.n < 1:
        raise GraphInputError("need at least one vertex")
    _validate_pattern(h)
    layer = attach_layer(
        g, LayerConfig(mode=LayerMode.STANDARD, c=c, seed=derive_seed(seed, _SALT_SISO))
    )
    lg = layer.graph
    lo, hi = layer.layer_range
    crossing = []
    for u in range(lo, hi):
        for w in lg.adjacency[u]:
            # layer vertices form an independent set, so w < lo always
            crossing.append((w, u))
    crossing.sort()
    k = h.n
    b = GraphBuilder(lg.n)
    cross_set = set(crossing)
    for x, y in lg.edges():
        if (x, y) not in cross_set:
            b.add_edge(x, y)
    subdivision = []
    for w, u in crossing:
        first = b.add_vertices(k)
        chain = [w, *range(first, first + k), u]
        for a, bb in zip(chain, chain[1:]):
            b.add_edge(a, bb)
        subdivision.append((w, u, first, first + k))
    return ReductionOutput(
        problem=ProblemTag.SUBGRAPH_ISO,
        graph=b.build(),
        source_n=g.n,
        layer_range=layer.layer_range,
        subdivision=tuple(subdivision),
        pattern=h,
        seed=seed,
    )


def _cycle4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def wter_4cycle_direct(g: Graph, c: int = 4, seed: int = 0) -> ReductionOutput:
    """4-cycle detection as the C4 instance of the pattern reduction."""
    out = wter_subgraph_iso(g, _cycle4(), c=c, seed=seed)
    return ReductionOutput(
        problem=ProblemTag.FOURCYCLE,
        graph=out.graph,
        source_n=out.source_n,
        layer_range=out.layer_range,
        subdivision=out.subdivision,
        pattern=out.pattern,
        seed=seed,
    )


# ---------------------------------------------------------- dominating set


@dataclass(frozen=True)
class Chunk:
    vertices: tuple[int, ...]
    tree_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TreeDecomposition:
    chunks: tuple[Chunk, ...]
    fallback: bool
    lower: int
    upper: int


def tree_decompose_small(g: Graph, epsilon) -> TreeDecomposition:
    """Split a connected graph's spanning tree into edge-disjoint connected
    chunks of between ceil(1/eps) and floor(3/eps) vertices (chunks may
    share boundary vertices).  A graph smaller than ceil(1/eps) comes back
    as a single flagged chunk.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps <= 1:
        raise GraphInputError("epsilon must lie in (0, 1]")
    s = frac_ceil(1 / eps)
    upper = int(3 / eps)
    if g.n < s:
        tree = rooted_spanning_tree(g, 0)
        edges = tuple(
            sorted((min(v, p), max(v, p)) for v, p in enumerate(tree) if p != v)
        )
        return TreeDecomposition(
            chunks=(Chunk(tuple(range(g.n)), edges),),
            fallback=True,
            lower=s,
            upper=upper,
        )
    parent = rooted_spanning_tree(g, 0)
    children: list[list[int]] = [[] for _ in range(g.n)]
    for v, p in enumerate(parent):
        if p != v:
            children[p].append(v)

    chunks: list[Chunk] = []
    # pending[v] = (edges, vertices incl. v) still unassigned in v's subtree
    pending: dict[int, tuple[list, set]] = {}
    stack: list[tuple[int, bool]] = [(0, False)]
    while stack:
        v, done = stack.pop()
        if not done:
            stack.append((v, True))
            for ch in reversed(children[v]):
                stack.append((ch, False))
            continue
        acc_edges: list[tuple[int, int]] = []
        acc_verts: set[int] = set()
        for ch in children[v]:
            ch_edges, ch_verts = pending.pop(ch)
            acc_edges.extend(ch_edges)
            acc_edges.append((min(v, ch), max(v, ch)))
            acc_verts |= ch_verts
            if len(acc_verts) + 1 >= s:
                chunks.append(
                    Chunk(
                        tuple(sorted(acc_verts | {v})),
                        tuple(sorted(acc_edges)),
                    )
                )
                acc_edges = []
                acc_verts = set()
        pending[v] = (acc_edges, acc_verts | {v})

    left_edges, left_verts = pending.pop(0)
    if left_edges:
        host = next(
            i
            for i in reversed(range(len(chunks)))
            if left_verts & set(chunks[i].vertices)
        )
        merged = Chunk(
            tuple(sorted(set(chunks[host].vertices) | left_verts)),
            tuple(sorted([*chunks[host].tree_edges, *left_edges])),
        )
        chunks[host] = merged
    for ch in chunks:
        if not s <= len(ch.vertices) <= upper:
            raise AssertionError(
                f"chunk size {len(ch.vertices)} outside [{s}, {upper}]"
            )
    return TreeDecomposition(
        chunks=tuple(chunks), fallback=False, lower=s, upper=upper
    )


def _mds_seed_set(g: Graph, eps: Fraction, seed: int, attempt: int) -> tuple[set[int], dict]:
    """One sampling round for the dominating-set reduction."""
    n = g.n
    rng = SplitMix64(derive_seed(seed, _SALT_MDS_SAMPLE, attempt))
    p = min(Fraction(10) * eps, Fraction(1))
    q: set[int] = set()
    for v in range(n):
        if rng.bernoulli(p.numerator, p.denominator):
            q.add(v)
    q1_size = len(q)
    # a vertex of high degree that missed its expected share of samples
    deg_floor = frac_ceil(Fraction(str(math.log(1 / eps))) / eps)
    bad = 0
    for v in range(n):
        if v in q:
            continue
        deg = len(g.adjacency[v])
        if deg >= deg_floor and sum(1 for w in g.adjacency[v] if w in q) < eps * deg:
            q.add(v)
            bad += 1
    fallback_components = 0
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        dec = tree_decompose_small(sub, eps)
        if dec.fallback:
            fallback_components += 1
        for ch in dec.chunks:
            q.add(comp[min(ch.vertices)])
    stats = {
        "q_sampled": q1_size,
        "q_bad": bad,
        "q_fallback_components": fallback_components,
    }
    return q, stats


def wter_mds(g: Graph, epsilon, c: int = 4, seed: int = 0) -> ReductionOutput:
    """Dominating-set self-reduction.

    Builds a hitting set Q (Bernoulli sample at rate min(10*eps, 1), plus
    under-sampled high-degree vertices, plus one vertex per spanning-tree
    chunk), adds a non-adjacent copy of each Q vertex wired to its
    original's neighborhood, attaches the dominating-set layer to the
    copies, and twins every layer vertex.  The optimum rises by exactly
    the layer size: copies let any dominator move off Q without losing
    coverage, and twins force all layer vertices into some optimum.

    Q is resampled (fresh stream per attempt) until |Q| <= 14*eps*n, at
    most 32 times; an oversized final Q is kept and flagged.
    """
    if g.n < 1:
        raise GraphInputError("need at least one vertex")
    eps = as_fraction(epsilon)
    if not 0 < eps <= Fraction(1, 2):
        raise GraphInputError("epsilon must lie in (0, 1/2]")
    n = g.n
    cap = Fraction(14) * eps * n
    q: set[int] = set()
    stats: dict = {}
    attempt = 0
    for attempt in range(MDS_RESAMPLE_LIMIT):
        q, stats = _mds_seed_set(g, eps, seed, attempt)
        if len(q) <= cap:
            break
    flags = dict(stats)
    flags["q_size"] = len(q)
    flags["q_attempts"] = attempt + 1
    flags["q_oversized"] = len(q) > cap

    q_list = sorted(q)
    b = GraphBuilder.from_graph(g)
    first_copy = b.add_vertices(len(q_list))
    for i, v in enumerate(q_list):
        for w in g.adjacency[v]:
            b.add_edge(first_copy + i, w)
    with_copies = b.build()
    copy_range = (first_copy, first_copy + len(q_list))

    layer = attach_layer(
        with_copies,
        LayerConfig(
            mode=LayerMode.MDS,
            c=c,
            epsilon=eps,
            attach_set=tuple(range(*copy_range)),
            seed=derive_seed(seed, _SALT_MDS_LAYER, attempt),
        ),
    )
    gp, twin_range = _attach_twins(layer.graph, layer.layer_vertices)
    return ReductionOutput(
        problem=ProblemTag.MDS,
        graph=gp,
        source_n=n,
        additive=layer.layer_size,
        layer_range=layer.layer_range,
        twin_range=twin_range,
        copy_range=copy_range,
        copy_of=tuple(q_list),
        seed=seed,
        flags=flags,
    )


# ---------------------------------------------------------------- recovery


def recover(out: ReductionOutput, answer: SolverAnswer | int | bool) -> SolverAnswer:
    """Undo a reduction's correction on a solved reduced instance."""
    if isinstance(answer, SolverAnswer):
        if answer.problem is not None:
            accepted = {out.problem.value}
            if out.problem is ProblemTag.FOURCYCLE:
                accepted.add("subgraph_iso")
            if answer.problem not in accepted:
                raise GraphInputError(
                    f"answer solves {answer.problem!r}, reduction is {out.problem.value!r}"
                )
        value = answer.value
    else:
        value = answer

    if out.problem in (ProblemTag.SUBGRAPH_ISO, ProblemTag.FOURCYCLE):
        return SolverAnswer(value=bool(value), problem=out.problem.value)
    if out.problem is ProblemTag.KCLIQUE:
        quot, rem = divmod(int(value), out.multiplicative)
        if rem:
            raise IdentityViolation(
                f"count {value} not divisible by {out.multiplicative}"
            )
        return SolverAnswer(value=quot, problem=out.problem.value)
    recovered = int(value) - out.additive
    if recovered < 0:
        raise IdentityViolation(
            f"reduced optimum {value} below correction {out.additive}"
        )
    return SolverAnswer(value=recovered, problem=out.problem.value)
