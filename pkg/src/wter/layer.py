"""Expansion layer: the randomized attachment that forces conductance up.

Given a graph G, the layer adds a fresh independent vertex set U and wires
it to (a subset of) V(G) in two steps:

1. every attached vertex samples a budget of distinct U-vertices without
   replacement (random bipartite edges), and
2. the attached vertices and U are each split into deterministic
   consecutive parts which are matched up and joined by complete bipartite
   graphs (skipped in MDS mode).

Low-degree vertices are handled by inflating the sample budget to the
ceil(C log2 n) floor; a fidelity mode realizes the same budgets by adding
literal self-loops first and stripping them afterwards (removing
self-loops never lowers conductance).

Layer sizing by mode (thresh = ceil(C log2 n), n the input vertex count):

* ``STANDARD``        |U| = 5n, every vertex attached, budget max(deg, thresh)
* ``DEGREE_BOUNDED``  |U| = 5 max(max-degree, thresh), same budgets
* ``SUBSET_ATTACHED`` |U| = 5 max(attach-set max-degree, thresh), only the
  attach set samples (sized off the attach set so budgets always fit)
* ``MDS``             |U| = 5 (ceil(eps * attach max-degree) + thresh),
  budgets ceil(eps * deg) + thresh, and no bi-clique step

Part sizes for the bi-clique step are ceil((C/10) log2 n) on the attached
side and ceil((C/2) log2 n) on the layer side; the final part of either
side may be smaller, parts are matched in index order, and when the counts
differ the extra parts are matched round-robin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .graph import Graph, GraphBuilder, GraphInputError, degree
from .rng import SplitMix64, derive_seed

_SAMPLE_SALT = 0x1A7E4


class LayerMode(Enum):
    STANDARD = "standard"
    DEGREE_BOUNDED = "degree_bounded"
    SUBSET_ATTACHED = "subset_attached"
    MDS = "mds"


class LayerBudgetError(GraphInputError):
    """A sample budget exceeded the layer size (sampling undefined)."""


def as_fraction(value) -> Fraction:
    """Normalize int/str/float/Fraction to an exact Fraction.

    Floats go through their decimal repr so that e.g. 0.3 means 3/10; size
    formulas take exact ceilings and must not wobble on binary float dust.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def frac_ceil(fr: Fraction) -> int:
    return -((-fr.numerator) // fr.denominator)


def log2_threshold(c: int, n: int) -> int:
    """ceil(C * log2 n), with log2 clamped to >= 1 (so n = 1 gives C)."""
    if c < 1:
        raise GraphInputError("C must be a positive integer")
    lg = max(1.0, math.log2(n)) if n >= 2 else 1.0
    return max(1, math.ceil(c * lg))


@dataclass(frozen=True)
class LayerConfig:
    mode: LayerMode = LayerMode.STANDARD
    c: int = 4
    epsilon: Fraction | None = None
    attach_set: tuple[int, ...] | None = None
    seed: int = 0
    literal_self_loops: bool = False


@dataclass(frozen=True)
class LayerResult:
    graph: Graph
    layer_range: tuple[int, int]
    sampled_edges: tuple[tuple[int, int], ...]
    biclique_edges: tuple[tuple[int, int], ...]
    seed: int
    budgets: tuple[tuple[int, int], ...] = field(repr=False, default=())

    @property
    def layer_size(self) -> int:
        return self.layer_range[1] - self.layer_range[0]

    @property
    def layer_vertices(self) -> range:
        return range(*self.layer_range)


def pad_min_degree(g: Graph, c: int = 4) -> tuple[Graph, dict[int, int]]:
    """Self-loop every vertex up to degree ceil(C log2 n).

    Returns the padded graph and the per-vertex loop counts added, so the
    caller can strip exactly those loops after attaching a layer.
    """
    thresh = log2_threshold(c, g.n)
    b = GraphBuilder.from_graph(g)
    added: dict[int, int] = {}
    for v in range(g.n):
        short = thresh - degree(g, v)
        if short > 0:
            b.add_self_loops(v, short)
            added[v] = short
    return b.build(), added


def _mode_sizes(
    g: Graph, cfg: LayerConfig, attach: list[int]
) -> tuple[int, dict[int, int]]:
    """Layer size and per-vertex sample budgets for the configured mode."""
    thresh = log2_threshold(cfg.c, g.n)
    degs = {v: degree(g, v) for v in attach}
    max_deg_attach = max(degs.values(), default=0)
    if cfg.mode is LayerMode.STANDARD:
        size = 5 * g.n
        budgets = {v: max(d, thresh) for v, d in degs.items()}
    elif cfg.mode is LayerMode.DEGREE_BOUNDED:
        size = 5 * max(max_deg_attach, thresh)
        budgets = {v: max(d, thresh) for v, d in degs.items()}
    elif cfg.mode is LayerMode.SUBSET_ATTACHED:
        size = 5 * max(max_deg_attach, thresh)
        budgets = {v: max(d, thresh) for v, d in degs.items()}
    elif cfg.mode is LayerMode.MDS:
        eps = cfg.epsilon
        if eps is None:
            raise GraphInputError("MDS layer mode requires epsilon")
        eps = as_fraction(eps)
        if not 0 < eps <= 1:
            raise GraphInputError("epsilon must lie in (0, 1]")
        size = 5 * (frac_ceil(eps * max_deg_attach) + thresh)
        budgets = {v: frac_ceil(eps * d) + thresh for v, d in degs.items()}
    else:  # pragma: no cover
        raise GraphInputError(f"unknown layer mode {cfg.mode}")
    return size, budgets


def _partition(items: list[int], part_size: int) -> list[list[int]]:
    return [items[i : i + part_size] for i in range(0, len(items), part_size)]


def attach_layer(g: Graph, cfg: LayerConfig) -> LayerResult:
    """Attach an expansion layer to ``g`` per ``cfg``; see the module doc."""
    if g.n == 0:
        raise GraphInputError("cannot attach a layer to the empty graph")

    if cfg.mode in (LayerMode.SUBSET_ATTACHED, LayerMode.MDS):
        if not cfg.attach_set:
            raise GraphInputError(f"{cfg.mode.value} mode requires attach_set")
        attach = sorted(set(cfg.attach_set))
        for v in attach:
            g.check_vertex(v)
    else:
        if cfg.attach_set is not None:
            raise GraphInputError(f"{cfg.mode.value} mode attaches every vertex")
        attach = list(range(g.n))
    if cfg.literal_self_loops and cfg.mode is LayerMode.MDS:
        raise GraphInputError("MDS mode has no min-degree padding step")

    work = g
    added_loops: dict[int, int] = {}
    if cfg.literal_self_loops:
        work, added_loops = pad_min_degree(g, cfg.c)

    size, budgets = _mode_sizes(work, cfg, attach)
    over = [v for v in attach if budgets[v] > size]
    if over:
        raise LayerBudgetError(
            f"sample budget {budgets[over[0]]} exceeds layer size {size} "
            f"at vertex {over[0]}; lower C or use a degree-bounded mode"
        )

    b = GraphBuilder.from_graph(work)
    first = b.add_vertices(size)
    layer_range = (first, first + size)

    rng = SplitMix64(derive_seed(cfg.seed, _SAMPLE_SALT))
    sampled: list[tuple[int, int]] = []
    for v in attach:
        for u in rng.sample_without_replacement(size, budgets[v], offset=first):
            b.add_edge(v, u)
            sampled.append((v, u))

    biclique: list[tuple[int, int]] = []
    if cfg.mode is not LayerMode.MDS:
        thresh_lg = max(1.0, math.log2(work.n)) if work.n >= 2 else 1.0
        part_attach = max(1, math.ceil(cfg.c * thresh_lg / 10))
        part_layer = max(1, math.ceil(cfg.c * thresh_lg / 2))
        attach_parts = _partition(attach, part_attach)
        layer_parts = _partition(list(range(first, first + size)), part_layer)
        for i in range(max(len(attach_parts), len(layer_parts))):
            ap = attach_parts[i % len(attach_parts)]
            lp = layer_parts[i % len(layer_parts)]
            for v in ap:
                for u in lp:
                    b.add_edge(v, u)
                    biclique.append((v, u))

    out = b.build()
    if added_loops:
        from .graph import strip_self_loops

        out = strip_self_loops(out, added_loops)

    return LayerResult(
        graph=out,
        layer_range=layer_range,
        sampled_edges=tuple(sampled),
        biclique_edges=tuple(biclique),
        seed=cfg.seed,
        budgets=tuple(sorted(budgets.items())),
    )
