"""Exact solvers and brute-force double oracles.

Every solver returns a :class:`SolverAnswer` whose witness (when present)
has been validated by the matching ``check_*`` function before return.
The ``*_bruteforce`` variants are independent re-derivations by emphatic
enumeration; tests pin each solver against its brute twin on small graphs.

The branch-and-bound solvers run a pendant-forcing reduction first, so
expander-reduction outputs (whose layer vertices all carry degree-1 twins)
collapse to their small cores before any search happens.  Size caps apply
to the post-reduction core, not the raw input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations

from .graph import Graph, GraphInputError, connected_components

MVC_CORE_CAP = 40
MDS_CORE_CAP = 34
BRUTE_CAP = 20


class SolverCapError(GraphInputError):
    """Instance (after reductions) exceeds the solver's tractable size."""


@dataclass(frozen=True)
class SolverAnswer:
    value: int | bool
    witness: tuple | None = None
    problem: str | None = None


class WitnessError(AssertionError):
    """A solver produced a witness its checker rejected (internal bug)."""


# ---------------------------------------------------------------- checkers


def check_matching(g: Graph, edges) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u == v or not g.has_edge(u, v):
            return False
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def check_vertex_cover(g: Graph, cover) -> bool:
    cset = set(cover)
    if any(not 0 <= v < g.n for v in cset):
        return False
    for v, count in enumerate(g.self_loops):
        if count and v not in cset:
            return False
    for u, v in g.edges():
        if u not in cset and v not in cset:
            return False
    return True


def check_dominating_set(g: Graph, dom) -> bool:
    dset = set(dom)
    if any(not 0 <= v < g.n for v in dset):
        return False
    for v in range(g.n):
        if v not in dset and not dset.intersection(g.adjacency[v]):
            return False
    return True


def check_clique(g: Graph, vertices) -> bool:
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        return False
    return all(g.has_edge(u, v) for u, v in combinations(vs, 2))


def check_embedding(g: Graph, h: Graph, mapping) -> bool:
    m = tuple(mapping)
    if len(m) != h.n or len(set(m)) != len(m):
        return False
    if any(not 0 <= v < g.n for v in m):
        return False
    return all(g.has_edge(m[u], m[v]) for u, v in h.edges())


def check_fourcycle(g: Graph, cycle) -> bool:
    c = tuple(cycle)
    if len(c) != 4 or len(set(c)) != 4:
        return False
    return all(g.has_edge(c[i], c[(i + 1) % 4]) for i in range(4))


def _validated(answer: SolverAnswer, g: Graph, checker, h: Graph | None = None) -> SolverAnswer:
    if answer.witness is not None:
        ok = checker(g, h, answer.witness) if h is not None else checker(g, answer.witness)
        if not ok:
            raise WitnessError(f"{answer.problem}: invalid witness {answer.witness}")
    return answer


# ------------------------------------------------------ maximum matching


def mcm_exact(g: Graph) -> SolverAnswer:
    """Maximum cardinality matching via augmenting paths with blossom
    contraction; practical well past the sizes the reductions emit."""
    n = g.n
    adj = g.adjacency
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v] = w
                    match[w] = v
                    break

    def lca(a: int, b: int, parent: list[int], base: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v, b, child, parent, base, in_blossom):
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to, parent, base)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, parent, base, in_blossom)
                    mark_path(to, cur, v, parent, base, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        u = to
                        while u != -1:
                            pv = parent[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    size = sum(1 for v in range(n) if match[v] != -1) // 2
    for v in range(n):
        if match[v] == -1 and find_augmenting(v):
            size += 1
    witness = tuple(sorted((v, match[v]) for v in range(n) if match[v] > v))
    answer = SolverAnswer(value=size, witness=witness, problem="mcm")
    if len(witness) != size:
        raise WitnessError("matching size mismatch")
    return _validated(answer, g, check_matching)


def mcm_bruteforce(g: Graph) -> int:
    """Independent value oracle: bitmask DP over vertex subsets."""
    n = g.n
    if n > BRUTE_CAP:
        raise SolverCapError(f"mcm_bruteforce capped at {BRUTE_CAP} vertices")
    masks = g.adj_masks
    memo: dict[int, int] = {0: 0}

    def f(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        vbit = mask & -mask
        v = vbit.bit_length() - 1
        best = f(mask ^ vbit)
        avail = masks[v] & mask
        while avail:
            ubit = avail & -avail
            avail ^= ubit
            best = max(best, 1 + f(mask ^ vbit ^ ubit))
        memo[mask] = best
        return best

    return f((1 << n) - 1)


# ----------------------------------------------------- minimum vertex cover


def _pendant_reduce_vc(g: Graph) -> tuple[set[int], list[set[int]]]:
    """Force self-loop endpoints and pendant neighbors into the cover."""
    adj = [set(a) for a in g.adjacency]
    forced: set[int] = set()

    def take(u: int) -> None:
        forced.add(u)
        for w in adj[u]:
            adj[w].discard(u)
            if len(adj[w]) == 1:
                queue.append(w)
        adj[u] = set()

    queue = deque()
    for v in range(g.n):
        if g.self_loops[v]:
            take(v)
    for v in range(g.n):
        if len(adj[v]) == 1:
            queue.append(v)
    while queue:
        v = queue.popleft()
        if len(adj[v]) == 1:
            take(next(iter(adj[v])))
    return forced, adj


def _matching_lower_bound(adj: dict[int, set[int]]) -> int:
    taken: set[int] = set()
    size = 0
    for v in sorted(adj):
        if v in taken:
            continue
        for w in adj[v]:
            if w not in taken:
                taken.add(v)
                taken.add(w)
                size += 1
                break
    return size


def mvc_exact(g: Graph, core_cap: int = MVC_CORE_CAP) -> SolverAnswer:
    """Minimum vertex cover: pendant-forcing reduction, then branch and
    bound (take v, or take all of N(v)) with a greedy matching bound."""
    forced, reduced = _pendant_reduce_vc(g)
    core = {v: set(a) for v, a in enumerate(reduced) if a}
    if len(core) > core_cap:
        raise SolverCapError(
            f"vertex cover core has {len(core)} vertices (cap {core_cap})"
        )

    best_extra = len(core)
    best_set: set[int] = set(core)

    def search(active: dict[int, set[int]], chosen: set[int]) -> None:
        nonlocal best_extra, best_set
        while True:
            pendant = next(
                (v for v in sorted(active) if len(active[v]) == 1), None
            )
            if pendant is None:
                break
            u = next(iter(active[pendant]))
            chosen = chosen | {u}
            active = _drop_cover(active, u)
        if not active:
            if len(chosen) < best_extra:
                best_extra = len(chosen)
                best_set = set(chosen)
            return
        if len(chosen) + _matching_lower_bound(active) >= best_extra:
            return
        v = min(active, key=lambda x: (-len(active[x]), x))
        search(_drop_cover(active, v), chosen | {v})
        nv = set(active[v])
        pruned = active
        for w in nv:
            pruned = _drop_cover(pruned, w)
        search(pruned, chosen | nv)

    search(core, set())
    cover = forced | best_set
    answer = SolverAnswer(
        value=len(cover), witness=tuple(sorted(cover)), problem="mvc"
    )
    return _validated(answer, g, check_vertex_cover)


def _drop_cover(active: dict[int, set[int]], v: int) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {}
    for u, a in active.items():
        if u == v:
            continue
        rest = a - {v}
        if rest:
            out[u] = rest
    return out


def mvc_bruteforce(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Subset enumeration by increasing size; first hit is lex-least."""
    if g.n > 16:
        raise SolverCapError("mvc_bruteforce capped at 16 vertices")
    edges = g.edges()
    loops = [v for v, c in enumerate(g.self_loops) if c]
    for k in range(g.n + 1):
        for subset in combinations(range(g.n), k):
            s = set(subset)
            if all(v in s for v in loops) and all(
                u in s or v in s for u, v in edges
            ):
                return k, subset
    raise AssertionError("unreachable: V covers everything")


# --------------------------------------------------- minimum dominating set


def mds_exact(g: Graph, core_cap: int = MDS_CORE_CAP) -> SolverAnswer:
    """Minimum dominating set: sequential pendant/isolated forcing, then
    branch and bound over the candidates dominating a most-constrained
    vertex, with subsumed candidates pruned and a disjoint-closed-
    neighborhood lower bound."""
    n = g.n
    closed = [frozenset(a) | {v} for v, a in enumerate(g.adjacency)]
    chosen: set[int] = set()
    dominated: set[int] = set()
    for v in range(n):
        if v in dominated:
            continue
        if len(g.adjacency[v]) == 0:
            chosen.add(v)
            dominated.add(v)
        elif len(g.adjacency[v]) == 1:
            u = g.adjacency[v][0]
            chosen.add(u)
            dominated.update(closed[u])

    undominated = frozenset(range(n)) - dominated
    if len(undominated) > core_cap:
        raise SolverCapError(
            f"dominating-set core has {len(undominated)} vertices (cap {core_cap})"
        )

    def greedy_upper(undom: frozenset[int]) -> set[int]:
        picked: set[int] = set()
        left = set(undom)
        while left:
            best_v = max(range(n), key=lambda v: (len(closed[v] & left), -v))
            picked.add(best_v)
            left -= closed[best_v]
        return picked

    def lower_bound(undom: frozenset[int]) -> int:
        blocked: set[int] = set()
        count = 0
        for w in sorted(undom):
            if not (closed[w] & blocked):
                count += 1
                blocked |= closed[w]
        return count

    seed_extra = greedy_upper(undominated)
    best_extra = len(seed_extra)
    best_set = set(seed_extra)

    def search(undom: frozenset[int], picked: set[int]) -> None:
        nonlocal best_extra, best_set
        if not undom:
            if len(picked) < best_extra:
                best_extra = len(picked)
                best_set = set(picked)
            return
        if len(picked) + lower_bound(undom) >= best_extra:
            return
        w = min(undom, key=lambda x: (len(closed[x]), x))
        cands = sorted(closed[w])
        covers = {c: closed[c] & undom for c in cands}
        keep = []
        for c in cands:
            dominated_by_other = any(
                c != d
                and (
                    covers[c] < covers[d]
                    or (covers[c] == covers[d] and d < c)
                )
                for d in cands
            )
            if not dominated_by_other:
                keep.append(c)
        for c in keep:
            search(undom - covers[c], picked | {c})

    search(undominated, set())
    dom = chosen | best_set
    answer = SolverAnswer(value=len(dom), witness=tuple(sorted(dom)), problem="mds")
    return _validated(answer, g, check_dominating_set)


def mds_bruteforce(g: Graph) -> tuple[int, tuple[int, ...]]:
    if g.n > 16:
        raise SolverCapError("mds_bruteforce capped at 16 vertices")
    closed = [set(a) | {v} for v, a in enumerate(g.adjacency)]
    for k in range(g.n + 1):
        for subset in combinations(range(g.n), k):
            covered: set[int] = set()
            for v in subset:
                covered |= closed[v]
            if len(covered) == g.n:
                return k, subset
    raise AssertionError("unreachable: V dominates everything")


# ------------------------------------------------------------ clique count


def kclique_count(g: Graph, k: int) -> SolverAnswer:
    """Exact number of k-cliques; witness is the lex-least one if any."""
    if k < 1:
        raise GraphInputError("k must be at least 1")
    n = g.n
    if k == 1:
        return SolverAnswer(
            value=n, witness=(0,) if n else None, problem="kclique"
        )
    masks = g.adj_masks
    count = 0
    first: tuple[int, ...] | None = None

    def rec(cand: int, need: int, stack: tuple[int, ...]) -> None:
        nonlocal count, first
        if need == 1:
            c = cand.bit_count()
            if c:
                count += c
                if first is None:
                    first = stack + ((cand & -cand).bit_length() - 1,)
            return
        while cand:
            vbit = cand & -cand
            v = vbit.bit_length() - 1
            cand ^= vbit
            if cand.bit_count() + 1 < need:
                return
            nxt = cand & masks[v]
            if nxt.bit_count() >= need - 1:
                rec(nxt, need - 1, stack + (v,))

    rec((1 << n) - 1, k, ())
    answer = SolverAnswer(value=count, witness=first, problem="kclique")
    if first is not None and not check_clique(g, first):
        raise WitnessError(f"kclique witness invalid: {first}")
    return answer


def kclique_bruteforce(g: Graph, k: int) -> int:
    if g.n > 16:
        raise SolverCapError("kclique_bruteforce capped at 16 vertices")
    return sum(1 for vs in combinations(range(g.n), k) if check_clique(g, vs))


# ------------------------------------------------------ subgraph isomorphism


def _pattern_order(h: Graph) -> list[int]:
    """Place each pattern vertex after one of its neighbors when possible."""
    order: list[int] = []
    placed: set[int] = set()
    for comp in connected_components(h):
        comp_set = set(comp)
        start = max(comp, key=lambda v: (len(h.adjacency[v]), -v))
        order.append(start)
        placed.add(start)
        while len(placed & comp_set) < len(comp):
            pick = max(
                (v for v in comp if v not in placed),
                key=lambda v: (
                    sum(1 for w in h.adjacency[v] if w in placed),
                    len(h.adjacency[v]),
                    -v,
                ),
            )
            order.append(pick)
            placed.add(pick)
    return order


def subgraph_iso_detect(g: Graph, h: Graph) -> SolverAnswer:
    """Does g contain a (not necessarily induced) copy of h?

    Witness maps pattern vertex i to host vertex witness[i].
    """
    if any(h.self_loops):
        raise GraphInputError("patterns with self-loops are not supported")
    k = h.n
    if k == 0:
        return SolverAnswer(value=True, witness=(), problem="subgraph_iso")
    if k > g.n:
        return SolverAnswer(value=False, witness=None, problem="subgraph_iso")
    order = _pattern_order(h)
    h_deg = [len(a) for a in h.adjacency]
    g_deg = [len(a) for a in g.adjacency]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def bt(i: int) -> bool:
        if i == k:
            return True
        hv = order[i]
        anchors = [mapping[w] for w in h.adjacency[hv] if w in mapping]
        if anchors:
            cand = set(g.neighbor_sets[anchors[0]])
            for a in anchors[1:]:
                cand &= g.neighbor_sets[a]
            candidates = sorted(cand)
        else:
            candidates = range(g.n)
        for gv in candidates:
            if gv in used or g_deg[gv] < h_deg[hv]:
                continue
            mapping[hv] = gv
            used.add(gv)
            if bt(i + 1):
                return True
            del mapping[hv]
            used.discard(gv)
        return False

    found = bt(0)
    witness = tuple(mapping[v] for v in range(k)) if found else None
    answer = SolverAnswer(value=found, witness=witness, problem="subgraph_iso")
    return _validated(answer, g, check_embedding, h=h) if found else answer


def subgraph_iso_bruteforce(g: Graph, h: Graph) -> bool:
    if g.n > 12 or h.n > 6:
        raise SolverCapError("subgraph_iso_bruteforce capped at host 12 / pattern 6")
    h_edges = h.edges()
    for subset in combinations(range(g.n), h.n):
        for perm in permutations(subset):
            if all(g.has_edge(perm[u], perm[v]) for u, v in h_edges):
                return True
    return h.n == 0


# ------------------------------------------------------------- 4-cycle


def fourcycle_brute(g: Graph) -> SolverAnswer:
    """Neighbor-of-neighbor marking per vertex: two distinct middles from
    one start to one end close a 4-cycle.  O(n) marks per start vertex."""
    for v in range(g.n):
        first_middle: dict[int, int] = {}
        for x in g.adjacency[v]:
            for w in g.adjacency[x]:
                if w == v:
                    continue
                prev = first_middle.get(w)
                if prev is None:
                    first_middle[w] = x
                elif prev != x:
                    cycle = (v, prev, w, x)
                    if not check_fourcycle(g, cycle):
                        raise WitnessError(f"bad 4-cycle {cycle}")
                    return SolverAnswer(value=True, witness=cycle, problem="fourcycle")
    return SolverAnswer(value=False, witness=None, problem="fourcycle")


def fourcycle_enum(g: Graph) -> bool:
    """Quadruple enumeration double oracle."""
    if g.n > 24:
        raise SolverCapError("fourcycle_enum capped at 24 vertices")
    for quad in combinations(range(g.n), 4):
        a, b, c, d = quad
        for cyc in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            if check_fourcycle(g, cyc):
                return True
    return False
