"""Heuristic expander decomposition with per-cluster certificates.

Recursive strategy, applied to each connected piece:

* singletons certify at conductance 1;
* pieces of at most ``exact_cap`` vertices get exact enumeration, either
  certifying the piece or splitting at the true minimum cut;
* larger pieces certify through the spectral lower bound when it clears
  the target, and otherwise split along the best prefix of a Fiedler
  sweep.  Every sweep cut's conductance is evaluated exactly, so eigen
  solve quality affects only where we cut, never whether a certificate
  is sound.

Certificates (``kind`` in singleton/exact/spectral) store a true lower
bound on the cluster's conductance; :func:`verify_decomposition`
re-derives every bound independently and totals inter-cluster edges
against the phi * m * log^2(m) budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .conductance import (
    ConductanceCapError,
    cut_conductance,
    exact_conductance,
    fiedler_sweep_order,
    spectral_lower_bound,
)
from .graph import Cut, Graph, GraphInputError, connected_components, induced_subgraph

DECOMPOSE_EXACT_CAP = 18


@dataclass(frozen=True)
class Certificate:
    kind: str
    bound: Fraction | float

    def __post_init__(self):
        if self.kind not in ("singleton", "exact", "spectral"):
            raise GraphInputError(f"unknown certificate kind {self.kind!r}")


@dataclass(frozen=True)
class Decomposition:
    clusters: tuple[tuple[int, ...], ...]
    certificates: tuple[Certificate, ...]
    outer_edges: tuple[tuple[int, int], ...]
    phi_target: Fraction = Fraction(0)

    @property
    def outer_count(self) -> int:
        return len(self.outer_edges)


def _certify(sub: Graph, phi: Fraction, exact_cap: int, seed: int):
    """Return (certificate, None) if sub is a phi-expander by our tests,
    else (None, cut) with a witness cut below phi."""
    if sub.n == 1:
        return Certificate("singleton", Fraction(1)), None
    if sub.n <= exact_cap:
        value, cut = exact_conductance(sub, cap=exact_cap, balanced_lex=True)
        if value >= phi:
            return Certificate("exact", value), None
        return None, cut
    bound = spectral_lower_bound(sub)
    if bound.connected and bound.value >= phi:
        return Certificate("spectral", bound.value), None
    order = fiedler_sweep_order(sub, seed=seed)
    best_cut: Cut | None = None
    best_value: Fraction | None = None
    for i in range(1, sub.n):
        cut = Cut(sub, frozenset(order[:i]))
        value = cut_conductance(sub, cut.members)
        if best_value is None or value < best_value:
            best_value = value
            best_cut = cut
    return None, best_cut


def expander_decompose(
    g: Graph,
    phi,
    exact_cap: int = DECOMPOSE_EXACT_CAP,
    seed: int = 0,
) -> Decomposition:
    """Partition V(g) into clusters whose induced subgraphs each carry a
    conductance certificate of at least phi."""
    phi = _as_phi(phi)
    if not 0 < phi <= 1:
        raise GraphInputError("phi must lie in (0, 1]")
    clusters: list[tuple[int, ...]] = []
    certs: list[Certificate] = []
    stack: list[tuple[int, ...]] = [
        comp for comp in connected_components(g)
    ][::-1]
    while stack:
        vs = stack.pop()
        sub, _ = induced_subgraph(g, vs)
        pieces = connected_components(sub)
        if len(pieces) > 1:
            for piece in reversed(pieces):
                stack.append(tuple(vs[i] for i in piece))
            continue
        cert, cut = _certify(sub, phi, exact_cap, seed)
        if cert is not None:
            clusters.append(tuple(vs))
            certs.append(cert)
            continue
        inside = sorted(cut.members)
        outside = sorted(set(range(sub.n)) - cut.members)
        stack.append(tuple(vs[i] for i in outside))
        stack.append(tuple(vs[i] for i in inside))

    order = sorted(range(len(clusters)), key=lambda i: clusters[i][0])
    clusters = [clusters[i] for i in order]
    certs = [certs[i] for i in order]
    owner: dict[int, int] = {}
    for idx, vs in enumerate(clusters):
        for v in vs:
            owner[v] = idx
    outer = tuple(
        (u, v) for u, v in g.edges() if owner[u] != owner[v]
    )
    return Decomposition(
        clusters=tuple(clusters),
        certificates=tuple(certs),
        outer_edges=outer,
        phi_target=phi,
    )


def _as_phi(phi) -> Fraction:
    if isinstance(phi, float):
        return Fraction(phi).limit_denominator(10**9)
    return Fraction(phi)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    phi: Fraction
    cluster_bounds: tuple[Fraction | float, ...]
    failures: tuple[int, ...]
    outer_count: int
    outer_budget: float
    within_budget: bool


def verify_decomposition(
    g: Graph,
    dec: Decomposition,
    phi=None,
    exact_cap: int = DECOMPOSE_EXACT_CAP,
    seed: int = 0,
) -> VerificationReport:
    """Independently recheck every certificate and the outer-edge total.

    Clusters are re-certified by the same policy (exact when small,
    spectral otherwise); the budget line compares inter-cluster edges to
    phi * m * log2(m)^2 and is reported, not enforced, since the bound
    only binds asymptotically.  ``phi`` defaults to the decomposition's
    own target.
    """
    phi = dec.phi_target if phi is None else _as_phi(phi)
    seen: set[int] = set()
    for vs in dec.clusters:
        for v in vs:
            if v in seen:
                raise GraphInputError(f"vertex {v} in two clusters")
            seen.add(v)
    if seen != set(range(g.n)):
        raise GraphInputError("clusters do not partition the vertex set")

    bounds: list[Fraction | float] = []
    failures: list[int] = []
    for idx, vs in enumerate(dec.clusters):
        sub, _ = induced_subgraph(g, vs)
        if sub.n == 1:
            bound: Fraction | float = Fraction(1)
        elif sub.n <= exact_cap:
            bound, _cut = exact_conductance(sub, cap=exact_cap)
        else:
            sb = spectral_lower_bound(sub)
            bound = sb.value if sb.connected else 0.0
        bounds.append(bound)
        if bound < phi:
            failures.append(idx)

    owner: dict[int, int] = {}
    for idx, vs in enumerate(dec.clusters):
        for v in vs:
            owner[v] = idx
    outer = sum(1 for u, v in g.edges() if owner[u] != owner[v])
    if outer != dec.outer_count:
        raise GraphInputError(
            f"decomposition records {dec.outer_count} outer edges, found {outer}"
        )
    m = g.m
    budget = float(phi) * m * (math.log2(m) ** 2 if m > 1 else 1.0)
    return VerificationReport(
        ok=not failures,
        phi=phi,
        cluster_bounds=tuple(bounds),
        failures=tuple(failures),
        outer_count=outer,
        outer_budget=budget,
        within_budget=outer <= budget,
    )
