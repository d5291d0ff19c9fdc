"""Conductance of cuts and graphs: exact rational values and spectral bounds.

``cut_conductance`` and ``exact_conductance`` work in exact rational
arithmetic (:class:`fractions.Fraction`); the exact minimum enumerates
every proper cut and so is capped by vertex count.  Above the cap,
``spectral_lower_bound`` certifies a floor: half the second-smallest
eigenvalue of the normalized Laplacian never exceeds the conductance.

Conventions: a single-vertex graph has conductance 1.  A proper cut whose
smaller side has volume 0 is *degenerate* and is scored 1 so it cannot
drag the minimum down (such a side is all isolated vertices and its
boundary is empty).  A disconnected graph with two positive-volume sides
has conductance 0 through any component-respecting cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .graph import Cut, Graph, GraphInputError, _as_vertex_set, is_connected
from .rng import SplitMix64, derive_seed

DEFAULT_EXACT_CAP = 20
SPECTRAL_TOL = 1e-8
SPECTRAL_MAX_ITER = 100_000

_SPECTRAL_SEED = 0x5EEDC0DE


class ConductanceCapError(GraphInputError):
    """Raised when exact enumeration is requested above the vertex cap."""


def is_degenerate_cut(g: Graph, s, loop_weight: int = 1) -> bool:
    """True when either side of the cut has volume 0."""
    members = _as_vertex_set(g, s)
    vol = _volumes(g, loop_weight)
    vol_s = sum(vol[v] for v in members)
    total = sum(vol)
    return min(vol_s, total - vol_s) == 0


def _volumes(g: Graph, loop_weight: int) -> list[int]:
    return [len(a) + loop_weight * c for a, c in zip(g.adjacency, g.self_loops)]


def cut_conductance(g: Graph, s, loop_weight: int = 1) -> Fraction:
    """delta(S) / min(vol S, vol S-bar) as an exact rational.

    Improper cuts (empty or full) and degenerate cuts score 1.
    """
    members = _as_vertex_set(g, s)
    vol = _volumes(g, loop_weight)
    vol_s = sum(vol[v] for v in members)
    total = sum(vol)
    den = min(vol_s, total - vol_s)
    if len(members) in (0, g.n) or den == 0:
        return Fraction(1)
    delta = 0
    for v in members:
        for w in g.adjacency[v]:
            if w not in members:
                delta += 1
    return Fraction(delta, den)


def _enumerate_min_cut(
    g: Graph, loop_weight: int, balanced_lex: bool
) -> tuple[Fraction, Cut | None]:
    """Gray-code sweep over all proper cuts with vertex 0 pinned inside S.

    With ``balanced_lex`` ties are broken toward the smaller volume
    imbalance and then the lexicographically least member tuple; otherwise
    the first minimum found wins.
    """
    n = g.n
    vol = _volumes(g, loop_weight)
    total = sum(vol)
    masks = g.adj_masks
    full = (1 << n) - 1

    s_mask = 1
    vol_s = vol[0]
    delta = len(g.adjacency[0])

    best_num, best_den = 1, 1  # degenerate score; any real cut <= 1 replaces it
    best_mask: int | None = None
    best_balance = None

    def consider(mask: int, d: int, vs: int) -> None:
        nonlocal best_num, best_den, best_mask, best_balance
        den = min(vs, total - vs)
        if den == 0:
            num, den = 1, 1  # degenerate cut
        else:
            num = d
        cmp = num * best_den - best_num * den
        if cmp > 0:
            return
        if cmp < 0:
            best_num, best_den, best_mask = num, den, mask
            best_balance = abs(2 * vs - total) if balanced_lex else None
            return
        if best_mask is None:
            best_num, best_den, best_mask = num, den, mask
            best_balance = abs(2 * vs - total) if balanced_lex else None
            return
        if not balanced_lex:
            return
        balance = abs(2 * vs - total)
        if balance > best_balance:
            return
        if balance < best_balance:
            best_num, best_den, best_mask, best_balance = num, den, mask, balance
            return
        if _mask_tuple(mask) < _mask_tuple(best_mask):
            best_num, best_den, best_mask = num, den, mask

    consider(s_mask, delta, vol_s)
    gray_prev = 0
    for i in range(1, 1 << (n - 1)):
        gray = i ^ (i >> 1)
        bit = gray ^ gray_prev
        gray_prev = gray
        v = bit.bit_length()  # flipped vertex id (bit index + 1)
        vbit = 1 << v
        av = masks[v]
        if s_mask & vbit:
            s_mask ^= vbit
            delta -= (av & ~s_mask & full).bit_count() - (av & s_mask).bit_count()
            vol_s -= vol[v]
        else:
            delta += (av & ~(s_mask | vbit) & full).bit_count() - (av & s_mask).bit_count()
            s_mask |= vbit
            vol_s += vol[v]
        if s_mask == full:
            continue
        consider(s_mask, delta, vol_s)

    if best_mask is None:
        return Fraction(1), None
    members = frozenset(
        v for v in range(n) if best_mask >> v & 1
    )
    return Fraction(best_num, best_den), Cut(g, members)


def _mask_tuple(mask: int) -> tuple[int, ...]:
    return tuple(v for v in range(mask.bit_length()) if mask >> v & 1)


def exact_conductance(
    g: Graph,
    cap: int = DEFAULT_EXACT_CAP,
    loop_weight: int = 1,
    balanced_lex: bool = False,
) -> tuple[Fraction, Cut | None]:
    """Minimum conductance over all 2^(n-1) - 1 proper cuts, with witness.

    Raises :class:`ConductanceCapError` above ``cap`` vertices; use
    :func:`spectral_lower_bound` there instead.
    """
    if g.n == 0:
        raise GraphInputError("conductance of the empty graph is undefined")
    if g.n == 1:
        return Fraction(1), None
    if g.n > cap:
        raise ConductanceCapError(
            f"exact enumeration capped at {cap} vertices (got {g.n}); "
            "use spectral_lower_bound for larger graphs"
        )
    return _enumerate_min_cut(g, loop_weight, balanced_lex)


@dataclass(frozen=True)
class SpectralBound:
    value: float
    connected: bool
    iterations: int
    converged: bool


def _normalized_walk_matvec(g: Graph):
    """Returns (apply, d) where apply(x) = D^-1/2 W D^-1/2 x, W incl. loops."""
    n = g.n
    w = np.zeros((n, n))
    for v, a in enumerate(g.adjacency):
        for u in a:
            w[v, u] = 1.0
        if g.self_loops[v]:
            w[v, v] = float(g.self_loops[v])
    d = w.sum(axis=1)
    dinv = 1.0 / np.sqrt(d)

    def apply(x: np.ndarray) -> np.ndarray:
        return dinv * (w @ (dinv * x))

    return apply, d


def _power_iteration(
    g: Graph, seed: int, tol: float, max_iter: int
) -> tuple[float, np.ndarray, int, bool]:
    """Deflated power iteration for the walk matrix M = I + D^-1/2 W D^-1/2.

    The top eigenvector of M is known in closed form (sqrt-degree), so the
    iteration runs in its orthogonal complement and converges to the
    eigenvalue 2 - lambda_2 of M.  Returns (mu, vector, iterations,
    converged) with mu the final Rayleigh quotient.
    """
    n = g.n
    apply, d = _normalized_walk_matvec(g)
    top = np.sqrt(d)
    top /= np.linalg.norm(top)

    rng = SplitMix64(derive_seed(seed, g.n, g.m))
    x = np.array([rng.unit() - 0.5 for _ in range(n)])
    x -= (top @ x) * top
    norm = np.linalg.norm(x)
    if norm == 0.0:
        x = np.zeros(n)
        x[0] = 1.0
        x -= (top @ x) * top
        norm = np.linalg.norm(x)
    x /= norm

    mu_prev = np.inf
    mu = 0.0
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        y = x + apply(x)
        y -= (top @ y) * top
        norm = np.linalg.norm(y)
        if norm < 1e-300:
            # x is annihilated: the deflated operator is zero on it, mu = 0.
            mu = 0.0
            converged = True
            break
        y /= norm
        mu = float(y @ (y + apply(y)))
        x = y
        if abs(mu - mu_prev) < tol:
            converged = True
            break
        mu_prev = mu
    return mu, x, iterations, converged


def spectral_lower_bound(
    g: Graph, tol: float = SPECTRAL_TOL, max_iter: int = SPECTRAL_MAX_ITER
) -> SpectralBound:
    """lambda_2 / 2 of the normalized Laplacian: a conductance floor.

    Disconnected graphs report 0 with ``connected=False``.  The value is a
    valid lower bound on the exact conductance up to the iteration
    tolerance (checked against exact enumeration on small graphs).
    """
    if g.n == 0:
        raise GraphInputError("spectral bound of the empty graph is undefined")
    if g.n == 1:
        return SpectralBound(value=1.0, connected=True, iterations=0, converged=True)
    if not is_connected(g):
        return SpectralBound(value=0.0, connected=False, iterations=0, converged=True)
    mu, _, iterations, converged = _power_iteration(g, _SPECTRAL_SEED, tol, max_iter)
    lam2 = 2.0 - mu
    value = min(1.0, max(0.0, lam2 / 2.0))
    return SpectralBound(
        value=value, connected=True, iterations=iterations, converged=converged
    )


def fiedler_sweep_order(
    g: Graph,
    seed: int = _SPECTRAL_SEED,
    tol: float = SPECTRAL_TOL,
    max_iter: int = SPECTRAL_MAX_ITER,
) -> list[int]:
    """Vertex order by the (approximate) Fiedler vector, ties by id.

    The sweep consumer evaluates exact cut conductances of every prefix, so
    eigenvector accuracy affects cut quality only, never correctness.
    """
    _, x, _, _ = _power_iteration(g, seed, tol, max_iter)
    return sorted(range(g.n), key=lambda v: (x[v], v))


def min_side_check(
    g: Graph, s, predicate: Callable[[Cut], bool] | None = None
) -> Cut:
    """Return whichever of S, S-bar satisfies ``predicate``.

    The default predicate selects the smaller-volume side, breaking a
    perfectly balanced tie toward the side containing vertex 0.
    """
    cut = s if isinstance(s, Cut) else Cut(g, frozenset(s))
    other = cut.complement()
    if predicate is None:
        vs, vo = volume_pair(g, cut)
        if vs < vo:
            return cut
        if vo < vs:
            return other
        return cut if 0 in cut.members else other
    if predicate(cut):
        return cut
    if predicate(other):
        return other
    raise GraphInputError("neither side of the cut satisfies the predicate")


def volume_pair(g: Graph, cut: Cut, loop_weight: int = 1) -> tuple[int, int]:
    vol = _volumes(g, loop_weight)
    vs = sum(vol[v] for v in cut.members)
    return vs, sum(vol) - vs
