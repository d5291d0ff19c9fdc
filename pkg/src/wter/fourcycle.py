"""4-cycle detection through expander decomposition.

The pipeline answers "does G contain a C4" by exhausting four disjoint
possibilities, cheapest first:

1. dense guard: a simple graph with m^2 >= n^3 always contains a C4
   (any C4-free graph has at most n(1 + sqrt(4n-3))/4 < n^1.5 edges),
   so dense inputs short-circuit to a direct search that must succeed;
2. cluster search: decompose at phi = n^(-eps) and scan each cluster's
   induced subgraph;
3. high-degree scan: check every vertex of degree at least
   t = ceil(n^((1+eps)/2)) for a C4 through it;
4. portal scan: for the remaining case the C4 crosses clusters and all
   its vertices have degree below t.  Every such cycle has a diagonal
   pair whose two 2-path centers both touch inter-cluster edges, so
   recording neighbor pairs for those centers and watching for a
   two-center collision finds it.

A "no" answer is sound because cases 2-4 jointly cover every C4 a
non-dense graph can contain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .decompose import DECOMPOSE_EXACT_CAP, Decomposition, expander_decompose
from .graph import Graph, GraphInputError, induced_subgraph
from .layer import as_fraction
from .solvers import check_fourcycle, fourcycle_brute


@dataclass(frozen=True)
class FourCycleReport:
    found: bool
    witness: tuple[int, int, int, int] | None
    stage: str
    phi: Fraction | None
    decomposition: Decomposition | None
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PortalSet:
    """Endpoints of inter-cluster edges with their outer-edge counts."""

    portals: tuple[int, ...]
    outer_incidence: dict[int, int]
    degree_threshold: int

    def __post_init__(self):
        if set(self.portals) != set(self.outer_incidence):
            raise GraphInputError("portals must match the incidence keys")
        if any(b < 1 for b in self.outer_incidence.values()):
            raise GraphInputError("every portal needs an outer edge")


def portal_set(g: Graph, outer_edges, threshold: int) -> PortalSet:
    incidence: dict[int, int] = {}
    for u, v in outer_edges:
        g.check_vertex(u)
        g.check_vertex(v)
        incidence[u] = incidence.get(u, 0) + 1
        incidence[v] = incidence.get(v, 0) + 1
    return PortalSet(
        portals=tuple(sorted(incidence)),
        outer_incidence=incidence,
        degree_threshold=threshold,
    )


def density_forces_cycle(n: int, m_simple: int) -> bool:
    """True when edge density alone forces a 4-cycle."""
    return n >= 1 and m_simple * m_simple >= n**3


def count_argument_guard(g: Graph) -> tuple[int, int, int, int] | None:
    """Direct witness when the graph is dense enough that a 4-cycle must
    exist (a C4-free simple graph has under n^1.5 edges); None otherwise."""
    m_simple = g.simple_edge_count()
    if not density_forces_cycle(g.n, m_simple):
        return None
    ans = fourcycle_brute(g)
    if not ans.value:
        raise AssertionError("density guard promised a 4-cycle")
    return ans.witness


def _ceil_root(x: int, r: int) -> int:
    """Smallest t >= 1 with t**r >= x (exact integer arithmetic)."""
    if x <= 1:
        return 1
    t = max(1, int(round(x ** (1.0 / r))))
    while t > 1 and (t - 1) ** r >= x:
        t -= 1
    while t**r < x:
        t += 1
    return t


def degree_threshold(n: int, epsilon) -> int:
    """ceil(n^((1+eps)/2)) computed exactly: the smallest t with
    t^(2q) >= n^(q+p) for eps = p/q in lowest terms."""
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise GraphInputError("epsilon must lie in (0, 1)")
    if n < 1:
        raise GraphInputError("need at least one vertex")
    p, q = eps.numerator, eps.denominator
    return _ceil_root(n ** (q + p), 2 * q)


def _scan_through(g: Graph, v: int) -> tuple[int, int, int, int] | None:
    """First-middle marking restricted to cycles through v."""
    first_middle: dict[int, int] = {}
    for x in g.adjacency[v]:
        for w in g.adjacency[x]:
            if w == v:
                continue
            prev = first_middle.get(w)
            if prev is None:
                first_middle[w] = x
            elif prev != x:
                return (v, prev, w, x)
    return None


def high_degree_scan(g: Graph, threshold: int) -> tuple[tuple | None, dict]:
    """Search for a C4 through any vertex of degree >= threshold."""
    hubs = [v for v in range(g.n) if len(g.adjacency[v]) >= threshold]
    marks = 0
    for v in hubs:
        marks += sum(len(g.adjacency[x]) for x in g.adjacency[v])
        cyc = _scan_through(g, v)
        if cyc is not None:
            return cyc, {"hubs": len(hubs), "marks": marks}
    return None, {"hubs": len(hubs), "marks": marks}


def portal_scan(
    g: Graph, portals: PortalSet, outer_edges
) -> tuple[tuple | None, dict]:
    """Record the endpoint pair of every 2-path whose center is a
    low-degree portal and whose arms include an outer edge; two distinct
    centers sharing a pair close a 4-cycle.

    Work is at most sum over scanned centers of deg(v) * b(v) pairs."""
    outer = {(u, v) if u < v else (v, u) for u, v in outer_edges}
    centers = [
        v for v in portals.portals
        if len(g.adjacency[v]) < portals.degree_threshold
    ]
    pair_center: dict[tuple[int, int], int] = {}
    pairs = 0
    for v in centers:
        outer_arms = [
            a for a in g.adjacency[v]
            if ((a, v) if a < v else (v, a)) in outer
        ]
        for a in outer_arms:
            for b in g.adjacency[v]:
                if b == a:
                    continue
                pairs += 1
                key = (a, b) if a < b else (b, a)
                prev = pair_center.get(key)
                if prev is None:
                    pair_center[key] = v
                elif prev != v and prev not in key and v not in key:
                    cyc = (key[0], prev, key[1], v)
                    return cyc, {"centers": len(centers), "pairs": pairs}
    return None, {"centers": len(centers), "pairs": pairs}


def ed_wter_4cycle(
    g: Graph,
    epsilon=Fraction(1, 4),
    oracle=None,
    exact_cap: int = DECOMPOSE_EXACT_CAP,
    seed: int = 0,
) -> FourCycleReport:
    """Full decomposition-routed 4-cycle detection.

    ``oracle`` answers existence on a cluster's induced subgraph; it may
    return a bare bool or a SolverAnswer.  The default is the exact
    marking detector, and any replacement is trusted for the yes/no but
    the reported witness is always re-derived and re-checked here.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise GraphInputError("epsilon must lie in (0, 1/2)")
    n = g.n
    if n < 1:
        raise GraphInputError("need at least one vertex")
    if oracle is None:
        oracle = fourcycle_brute
    m_simple = g.simple_edge_count()

    dense = count_argument_guard(g)
    if dense is not None:
        return FourCycleReport(
            found=True,
            witness=dense,
            stage="dense_guard",
            phi=None,
            decomposition=None,
            stats={"m_simple": m_simple},
        )

    phi = Fraction(float(n) ** -float(eps)).limit_denominator(10**9)
    dec = expander_decompose(g, phi, exact_cap=exact_cap, seed=seed)
    oracle_calls = 0
    for vs in dec.clusters:
        sub, _ = induced_subgraph(g, vs)
        oracle_calls += 1
        ans = oracle(sub)
        if ans if isinstance(ans, bool) else ans.value:
            witness = getattr(ans, "witness", None)
            if witness is None:
                witness = fourcycle_brute(sub).witness
            w = tuple(vs[i] for i in witness)
            _require_cycle(g, w)
            return FourCycleReport(
                found=True,
                witness=w,
                stage="cluster",
                phi=phi,
                decomposition=dec,
                stats={"clusters": len(dec.clusters), "oracle_calls": oracle_calls},
            )

    t = degree_threshold(n, eps)
    cyc, hstats = high_degree_scan(g, t)
    if cyc is not None:
        _require_cycle(g, cyc)
        return FourCycleReport(
            found=True,
            witness=cyc,
            stage="high_degree",
            phi=phi,
            decomposition=dec,
            stats={"threshold": t, "oracle_calls": oracle_calls, **hstats},
        )

    portals = portal_set(g, dec.outer_edges, t)
    cyc, pstats = portal_scan(g, portals, dec.outer_edges)
    if cyc is not None:
        _require_cycle(g, cyc)
        return FourCycleReport(
            found=True,
            witness=cyc,
            stage="portal",
            phi=phi,
            decomposition=dec,
            stats={"threshold": t, "oracle_calls": oracle_calls, **hstats, **pstats},
        )
    return FourCycleReport(
        found=False,
        witness=None,
        stage="none",
        phi=phi,
        decomposition=dec,
        stats={
            "threshold": t,
            "clusters": len(dec.clusters),
            "outer": dec.outer_count,
            "oracle_calls": oracle_calls,
            **hstats,
            **pstats,
        },
    )


def _require_cycle(g: Graph, cyc) -> None:
    if not check_fourcycle(g, cyc):
        raise AssertionError(f"stage returned a non-cycle {cyc}")
