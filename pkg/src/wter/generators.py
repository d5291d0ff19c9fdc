"""Deterministic instance generators.

Random families draw from :class:`~wter.rng.SplitMix64` with exact
integer Bernoulli tests, so a (family, parameters, seed) triple pins the
instance byte for byte across platforms.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import Graph, GraphBuilder, GraphInputError
from .layer import as_fraction
from .rng import SplitMix64, derive_seed

_SALT_GNP = 0x6E70
_SALT_CLUSTERED = 0x1A9D
_SALT_PLANT = 0x91A2
_SALT_C4FREE = 0xC4F8EE


def gen_gnp(n: int, p, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p); each pair tested in lexicographic order."""
    if n < 0:
        raise GraphInputError("n must be non-negative")
    prob = as_fraction(p)
    if not 0 <= prob <= 1:
        raise GraphInputError("p must lie in [0, 1]")
    rng = SplitMix64(derive_seed(seed, _SALT_GNP, n))
    b = GraphBuilder(n)
    num, den = prob.numerator, prob.denominator
    for u in range(n):
        for v in range(u + 1, n):
            if rng.bernoulli(num, den):
                b.add_edge(u, v)
    return b.build()


_PLANT_SIZES = {"c4": 4, "triangle": 3}


def gen_planted(kind: str, base: Graph, seed: int = 0, k: int | None = None) -> Graph:
    """Base graph plus one planted structure on random distinct vertices.

    ``kind`` is ``c4``, ``triangle``, or ``kclique`` (with k); existing
    edges may overlap the plant, which only adds edges.
    """
    if kind == "kclique":
        if k is None or k < 2:
            raise GraphInputError("kclique plant needs k >= 2")
        size = k
    elif kind in _PLANT_SIZES:
        size = _PLANT_SIZES[kind]
    else:
        raise GraphInputError(f"unknown plant kind {kind!r}")
    if base.n < size:
        raise GraphInputError(
            f"cannot plant a {size}-vertex structure into {base.n} vertices"
        )
    rng = SplitMix64(derive_seed(seed, _SALT_PLANT, size))
    spots = rng.sample_without_replacement(base.n, size)
    b = GraphBuilder.from_graph(base)
    if kind == "c4":
        for i in range(4):
            b.add_edge(spots[i], spots[(i + 1) % 4])
    else:
        for i in range(size):
            for j in range(i + 1, size):
                b.add_edge(spots[i], spots[j])
    return b.build()


def gen_c4_free(n: int, seed: int = 0) -> Graph:
    """A guaranteed C4-free graph on about n vertices.

    Rotates between random trees, subdivided cliques (girth 6), and long
    cycles so negative 4-cycle instances vary in shape.
    """
    if n < 1:
        raise GraphInputError("n must be positive")
    rng = SplitMix64(derive_seed(seed, _SALT_C4FREE, n))
    variant = rng.randbelow(3) if n >= 5 else 0
    if variant == 1:
        k = 2
        while (k + 1) + k * (k + 1) // 2 <= n:
            k += 1
        return gen_subdivided_clique(k)
    if variant == 2:
        return gen_cycle(n)
    return gen_tree(n, seed)


def gen_clustered(n: int, parts: int, p_in, p_out, seed: int = 0) -> Graph:
    """Planted partition: dense inside round-robin classes, sparse across.

    Deliberately poorly connected for p_out << p_in; the standard stress
    input for decomposition and conductance tests.
    """
    if parts < 1:
        raise GraphInputError("parts must be positive")
    pin, pout = as_fraction(p_in), as_fraction(p_out)
    for prob in (pin, pout):
        if not 0 <= prob <= 1:
            raise GraphInputError("probabilities must lie in [0, 1]")
    rng = SplitMix64(derive_seed(seed, _SALT_CLUSTERED, n, parts))
    b = GraphBuilder(n)
    for u in range(n):
        for v in range(u + 1, n):
            prob = pin if u % parts == v % parts else pout
            if rng.bernoulli(prob.numerator, prob.denominator):
                b.add_edge(u, v)
    return b.build()


def gen_tree(n: int, seed: int = 0) -> Graph:
    """Random tree: vertex i attaches to a uniformly random earlier one."""
    if n < 1:
        raise GraphInputError("n must be positive")
    rng = SplitMix64(derive_seed(seed, 0x7EEE, n))
    b = GraphBuilder(n)
    for v in range(1, n):
        b.add_edge(v, rng.randbelow(v))
    return b.build()


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n)]
    )


def gen_star(n: int) -> Graph:
    """Star on n vertices, center 0."""
    if n < 1:
        raise GraphInputError("n must be positive")
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def gen_complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(
        a + b, [(u, a + v) for u in range(a) for v in range(b)]
    )


def gen_subdivided_clique(k: int) -> Graph:
    """K_k with every edge subdivided once: C4-free, poorly connected."""
    if k < 2:
        raise GraphInputError("k must be at least 2")
    b = GraphBuilder(k)
    for u in range(k):
        for v in range(u + 1, k):
            mid = b.add_vertices(1)
            b.add_edge(u, mid)
            b.add_edge(mid, v)
    return b.build()


def gen_grid(rows: int, cols: int) -> Graph:
    """Grid graph (contains C4 whenever a 2x2 block fits)."""
    if rows < 1 or cols < 1:
        raise GraphInputError("grid needs positive dimensions")
    b = GraphBuilder(rows * cols)
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                b.add_edge(v, v + 1)
            if r + 1 < rows:
                b.add_edge(v, v + cols)
    return b.build()


def gen_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def named_instance(spec: str, seed: int = 0) -> Graph:
    """Build a graph from a compact text form.

    Examples: ``gnp:20:0.3``, ``clustered:30:3:0.6:0.05``, ``tree:15``,
    ``path:6``, ``cycle:8``, ``complete:5``, ``star:7``, ``biclique:3:4``,
    ``subdiv_clique:5``, ``grid:3:3``, ``petersen``, ``c4_free:40``,
    ``planted_c4:20:0.1`` (a G(n,p) base plus one C4).
    """
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        if name == "gnp":
            return gen_gnp(int(args[0]), args[1], seed)
        if name == "clustered":
            return gen_clustered(int(args[0]), int(args[1]), args[2], args[3], seed)
        if name == "planted_c4":
            return gen_planted("c4", gen_gnp(int(args[0]), args[1], seed), seed)
        if name == "c4_free":
            return gen_c4_free(int(args[0]), seed)
        if name == "tree":
            return gen_tree(int(args[0]), seed)
        if name == "path":
            return gen_path(int(args[0]))
        if name == "cycle":
            return gen_cycle(int(args[0]))
        if name == "complete":
            return gen_complete(int(args[0]))
        if name == "star":
            return gen_star(int(args[0]))
        if name == "biclique":
            return gen_complete_bipartite(int(args[0]), int(args[1]))
        if name == "subdiv_clique":
            return gen_subdivided_clique(int(args[0]))
        if name == "grid":
            return gen_grid(int(args[0]), int(args[1]))
        if name == "petersen":
            return gen_petersen()
    except (IndexError, ValueError) as exc:
        raise GraphInputError(f"bad instance spec {spec!r}: {exc}") from exc
    raise GraphInputError(f"unknown instance family {name!r}")
