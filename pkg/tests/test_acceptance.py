"""Acceptance gate: eleven end-to-end checks with pinned budgets and seeds.

Each test prints one verdict line; run ``pytest tests/test_acceptance.py -v -s``
to see all of them (under default capture the lines still show for failures).

Check 7 is the known red one.  Twinning is only guaranteed to keep half the
conductance when every twinned vertex has degree at least 2; the exhaustive
sweep below twins uniformly random subsets and therefore hits degree-1
vertices, where a twin pair forms a cheap cut (boundary 1, volume 3).  The
failing graphs are enumerated by the test itself.
"""

import json
import math
import time
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from wter.conductance import exact_conductance, spectral_lower_bound
from wter.experiment import ExperimentSpec, render_csv, render_json, run_experiment
from wter.fourcycle import ed_wter_4cycle
from wter.generators import gen_c4_free, gen_gnp, gen_planted, named_instance
from wter.graph import Graph, degree, is_connected
from wter.layer import LayerConfig, LayerMode, attach_layer, log2_threshold
from wter.reductions import (
    recover,
    wter_kclique,
    wter_mcm,
    wter_mds,
    wter_mvc,
    wter_subgraph_iso,
)
from wter.rng import SplitMix64, derive_seed
from wter.solvers import (
    fourcycle_brute,
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

P_CYCLE = (0.2, 0.5, 0.8)


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"CRITERION {num}: {'PASS' if ok else 'FAIL'} ({detail})")


def _sized_gnp(salt: int, i: int, lo: int, hi: int) -> Graph:
    rng = SplitMix64(derive_seed(salt, i))
    n = lo + rng.randbelow(hi - lo + 1)
    return gen_gnp(n, P_CYCLE[i % 3], seed=derive_seed(salt, i, 1))


def _connected_gnp(n: int, p: float, seed: int) -> Graph:
    for attempt in range(64):
        g = gen_gnp(n, p, derive_seed(seed, attempt))
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected G({n},{p}) draw in 64 attempts")


def test_criterion_01_matching_identity():
    """Recovered maximum matching equals the direct optimum, offset 5n."""
    t0 = time.monotonic()
    good = 0
    for i in range(200):
        g = _sized_gnp(0xA001, i, 2, 40)
        out = wter_mcm(g, seed=i)
        rec = recover(out, mcm_exact(out.graph))
        if rec.value == mcm_exact(g).value and out.graph.n == 11 * g.n:
            good += 1
    dt = time.monotonic() - t0
    ok = good == 200 and dt < 120
    _verdict(1, ok, f"{good}/200 matching identities exact, {dt:.1f}s of 120s")
    assert good == 200
    assert dt < 120


def test_criterion_02_vertex_cover_identity():
    """Recovered minimum vertex cover matches, offset 5*max(maxdeg, 4log n)."""
    t0 = time.monotonic()
    good = 0
    for i in range(100):
        g = _sized_gnp(0xA002, i, 2, 14)
        out = wter_mvc(g, seed=i)
        rec = recover(out, mvc_exact(out.graph))
        delta = max(degree(g, v) for v in range(g.n))
        offset = 5 * max(delta, log2_threshold(4, g.n))
        if rec.value == mvc_exact(g).value and out.additive == offset:
            good += 1
    dt = time.monotonic() - t0
    ok = good == 100 and dt < 120
    _verdict(2, ok, f"{good}/100 cover identities exact, {dt:.1f}s of 120s")
    assert good == 100
    assert dt < 120


def test_criterion_03_clique_count_identity():
    """Blow-up multiplies k-clique counts by exactly k factorial."""
    t0 = time.monotonic()
    good = 0
    for i in range(100):
        k = 3 if i % 2 == 0 else 4
        g = _sized_gnp(0xA003, i, 2, 12)
        out = wter_kclique(g, k, seed=i)
        reduced = kclique_count(out.graph, k)
        direct = kclique_count(g, k)
        rec = recover(out, reduced)
        if (
            reduced.value == math.factorial(k) * direct.value
            and rec.value == direct.value
        ):
            good += 1
    dt = time.monotonic() - t0
    ok = good == 100 and dt < 180
    _verdict(3, ok, f"{good}/100 count identities exact (k in 3,4), {dt:.1f}s of 180s")
    assert good == 100
    assert dt < 180


def test_criterion_04_subgraph_detection_preserved():
    """Pattern containment in the reduced host iff in the original host."""
    t0 = time.monotonic()
    patterns = (
        ("C3", named_instance("cycle:3")),
        ("C4", named_instance("cycle:4")),
        ("C5", named_instance("cycle:5")),
        ("K4", named_instance("complete:4")),
        ("diamond", Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])),
    )
    good = 0
    for pi, (_label, pat) in enumerate(patterns):
        for i in range(50):
            g = _sized_gnp(0xA004 + pi, i, 3, 12)
            out = wter_subgraph_iso(g, pat, seed=i)
            rec = recover(out, subgraph_iso_detect(out.graph, pat))
            if rec.value == subgraph_iso_bruteforce(g, pat):
                good += 1
    dt = time.monotonic() - t0
    ok = good == 250 and dt < 180
    _verdict(4, ok, f"{good}/250 detections match brute force, {dt:.1f}s of 180s")
    assert good == 250
    assert dt < 180


def test_criterion_05_dominating_set_identity_and_blowup():
    """Recovered domination number matches; large instances stay within
    n + 26*eps*n vertices in at least 90 of 100 trials (the sampled seed
    set resamples, so the size bound is statistical, not per-instance)."""
    t0 = time.monotonic()
    eps_grid = (Fraction(1, 5), Fraction(3, 10), Fraction(2, 5))
    good = 0
    for i in range(60):
        eps = eps_grid[i % 3]
        rng = SplitMix64(derive_seed(0xA005, i))
        n = 2 + rng.randbelow(13)
        g = _connected_gnp(n, 0.5, derive_seed(0xA005, i, 1))
        out = wter_mds(g, eps, seed=i)
        rec = recover(out, mds_exact(out.graph))
        if rec.value == mds_exact(g).value:
            good += 1
    eps_small = Fraction(1, 20)
    budget = 200 + 26 * eps_small * 200
    within = 0
    sizes = []
    for i in range(100):
        g = gen_gnp(200, 0.1, seed=derive_seed(0xA055, i))
        out = wter_mds(g, eps_small, c=1, seed=i)
        sizes.append(out.graph.n)
        within += out.graph.n <= budget
    dt = time.monotonic() - t0
    ok = good == 60 and within >= 90 and dt < 300
    _verdict(
        5,
        ok,
        f"{good}/60 identities exact; blow-up {within}/100 within "
        f"{int(budget)} vertices (observed {min(sizes)}..{max(sizes)}), "
        f"{dt:.1f}s of 300s",
    )
    assert good == 60
    assert within >= 90
    assert dt < 300


def test_criterion_06_layer_conductance_floor():
    """Standard layer at C=4 keeps conductance at or above 0.01 in at least
    95 of 100 seeded trials.  Certification is by the spectral lower bound:
    exhaustive cut enumeration is out of reach at 48..72 vertices, and the
    bound sits below the exact conductance, so every certified trial is a
    sound pass."""
    passes = 0
    floor_min = 1.0
    for i in range(100):
        rng = SplitMix64(derive_seed(0xA006, i))
        n = 8 + rng.randbelow(5)
        g = gen_gnp(n, 0.5, seed=derive_seed(0xA006, i, 1))
        res = attach_layer(g, LayerConfig(mode=LayerMode.STANDARD, c=4, seed=i))
        bound = spectral_lower_bound(res.graph)
        value = bound.value if bound.connected else 0.0
        floor_min = min(floor_min, value)
        passes += value >= 0.01
    ok = passes >= 95
    _verdict(
        6,
        ok,
        f"{passes}/100 trials certified >= 0.01 (spectral floor min {floor_min:.4f})",
    )
    assert passes >= 95


def _phi_enum(g: Graph) -> Fraction:
    """Exact conductance by full cut enumeration, vectorised over bitmasks."""
    if g.n == 1:
        return Fraction(1)
    masks = np.arange(1, (1 << g.n) - 1, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(g.n)) & 1
    degs = np.array([degree(g, v) for v in range(g.n)], dtype=np.int64)
    vol = bits @ degs
    minvol = np.minimum(vol, int(degs.sum()) - vol)
    boundary = np.zeros(len(masks), dtype=np.int64)
    for u, v in g.edges():
        boundary += bits[:, u] != bits[:, v]
    keep = minvol > 0
    ratios = boundary[keep] / minvol[keep]
    i = int(np.argmin(ratios))
    return Fraction(int(boundary[keep][i]), int(minvol[keep][i]))


def _with_twins(g: Graph, twin_set: tuple[int, ...]) -> Graph:
    edges = list(g.edges())
    nxt = g.n
    for u in sorted(twin_set):
        edges.append((u, nxt))
        nxt += 1
    return Graph.from_edges(nxt, edges)


def test_criterion_07_twin_halving_exhaustive():
    """Exhaustive sweep: every connected graph on up to 7 vertices, one
    uniformly random twin set each, both conductances by cut enumeration.
    Expected to fail: a twinned degree-1 vertex and its twin form a cut of
    boundary 1 and volume 3, so high-conductance graphs with pendants drop
    below half (single edge twinned at both ends becomes a 4-path, 1 vs 1/3)."""
    t0 = time.monotonic()
    atlas = [
        a
        for a in nx.graph_atlas_g()[1:]
        if 1 <= a.number_of_nodes() <= 7 and nx.is_connected(a)
    ]
    assert len(atlas) == 996
    holds = 0
    failures = []
    for idx, a in enumerate(atlas):
        n = a.number_of_nodes()
        g = Graph.from_edges(n, list(a.edges()))
        rng = SplitMix64(derive_seed(0xACC7, idx))
        mask = 1 + rng.randbelow((1 << n) - 1)
        twin_set = tuple(v for v in range(n) if (mask >> v) & 1)
        before = _phi_enum(g)
        after = _phi_enum(_with_twins(g, twin_set))
        if idx % 40 == 0:
            # enumerator cross-check against the library's exact routine
            lib_value, _cut = exact_conductance(_with_twins(g, twin_set))
            assert lib_value == after
        if after >= before / 2:
            holds += 1
        else:
            failures.append((idx, n, twin_set, before, after))
    dt = time.monotonic() - t0
    # every observed failure twins at least one degree-1 vertex
    for idx, n, twin_set, _before, _after in failures:
        a = atlas[idx]
        g = Graph.from_edges(n, list(a.edges()))
        assert any(degree(g, v) == 1 for v in twin_set)
    pct = 100 * holds / len(atlas)
    ok = holds == len(atlas) and dt < 300
    _verdict(
        7,
        ok,
        f"{holds}/{len(atlas)} graphs keep half their conductance ({pct:.2f}%); "
        f"all {len(failures)} failures twin a degree-1 vertex; {dt:.1f}s of 300s",
    )
    assert dt < 300
    assert holds == len(atlas)


@pytest.fixture(scope="module")
def ed_runs():
    """300 decomposition-routed detector runs shared by checks 8 and 9."""
    runs = []
    t0 = time.monotonic()
    for i in range(300):
        family = i % 5
        rng = SplitMix64(derive_seed(0xA008, i))
        n = 4 + rng.randbelow(197)
        seed = derive_seed(0xA008, i, 1)
        if family == 0:
            g = gen_gnp(n, 2 / n, seed=seed)
        elif family == 1:
            g = gen_gnp(n, float(n) ** -0.6, seed=seed)
        elif family == 2:
            g = gen_gnp(n, 0.3, seed=seed)
        elif family == 3:
            g = gen_planted("c4", gen_gnp(n, 2 / n, seed=seed), seed=seed)
        else:
            g = gen_c4_free(n, seed=seed)
        runs.append((g, ed_wter_4cycle(g, Fraction(1, 4), seed=i)))
    return runs, time.monotonic() - t0


def _is_c4(g: Graph, w) -> bool:
    if w is None or len(w) != 4 or len(set(w)) != 4:
        return False
    a, b, c, d = w
    return (
        g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a)
    )


def test_criterion_08_ed_detector_exactness(ed_runs):
    """Decomposition-routed 4-cycle detection agrees with brute force on all
    300 instances and every positive answer carries a verified witness."""
    runs, build_dt = ed_runs
    t0 = time.monotonic()
    agree = 0
    witnessed = 0
    positives = 0
    for g, report in runs:
        truth = fourcycle_brute(g)
        if report.found == truth.value:
            agree += 1
        if report.found:
            positives += 1
            witnessed += _is_c4(g, report.witness)
    dt = build_dt + (time.monotonic() - t0)
    ok = agree == 300 and witnessed == positives and dt < 300
    _verdict(
        8,
        ok,
        f"{agree}/300 agree with brute force, {witnessed}/{positives} "
        f"positives carry valid witnesses, {dt:.1f}s of 300s",
    )
    assert agree == 300
    assert witnessed == positives
    assert dt < 300


def test_criterion_09_cluster_certificates(ed_runs):
    """Every cluster certificate meets the conductance target; the summed
    cluster boundary is reported against the phi * m * log^2 m budget."""
    runs, _build_dt = ed_runs
    certs_total = 0
    certs_ok = 0
    boundary_sum = 0
    budget_sum = 0.0
    decomposed = 0
    for g, report in runs:
        dec = report.decomposition
        if dec is None:
            continue
        decomposed += 1
        for cert in dec.certificates:
            certs_total += 1
            certs_ok += cert.bound >= report.phi
        boundary_sum += 2 * dec.outer_count
        if g.m >= 2:
            budget_sum += float(report.phi) * g.m * math.log2(g.m) ** 2
    ok = certs_total > 0 and certs_ok == certs_total
    _verdict(
        9,
        ok,
        f"{certs_ok}/{certs_total} certificates at or above target over "
        f"{decomposed} decompositions; total cluster boundary {boundary_sum} "
        f"vs budget {budget_sum:.0f}",
    )
    assert certs_total > 0
    assert certs_ok == certs_total


def test_criterion_10_solver_oracle_soundness():
    """All five exact solvers agree with naive enumeration on 500 seeded
    graphs of at most 8 vertices."""
    t0 = time.monotonic()
    c4 = named_instance("cycle:4")
    good = 0
    for i in range(500):
        rng = SplitMix64(derive_seed(0xA010, i))
        n = 1 + rng.randbelow(8)
        g = gen_gnp(n, P_CYCLE[i % 3], seed=derive_seed(0xA010, i, 1))
        checks = (
            mcm_exact(g).value == mcm_bruteforce(g),
            mvc_exact(g).value == mvc_bruteforce(g)[0],
            mds_exact(g).value == mds_bruteforce(g)[0],
            kclique_count(g, 3).value == kclique_bruteforce(g, 3),
            subgraph_iso_detect(g, c4).value == subgraph_iso_bruteforce(g, c4),
        )
        good += all(checks)
    dt = time.monotonic() - t0
    ok = good == 500 and dt < 300
    _verdict(10, ok, f"{good}/500 graphs, all five solvers agree, {dt:.1f}s of 300s")
    assert good == 500
    assert dt < 300


def test_criterion_11_reproducibility():
    """Same base seed, same bytes: harness reports and raw schedules."""
    spec = ExperimentSpec(
        name="acceptance-rerun",
        reduction="mcm",
        n_range=(2, 12),
        trials=25,
        base_seed=17,
        checks=("identity", "blowup"),
    )
    first = run_experiment(spec)
    second = run_experiment(spec)
    json_same = render_json(first) == render_json(second)
    csv_same = render_csv(first) == render_csv(second)

    def matching_digest() -> str:
        rows = []
        for i in range(30):
            g = _sized_gnp(0xA001, i, 2, 40)
            out = wter_mcm(g, seed=i)
            rows.append([i, g.n, g.m, out.graph.n, out.graph.m, mcm_exact(out.graph).value])
        return json.dumps(rows)

    digest_same = matching_digest() == matching_digest()
    ok = json_same and csv_same and digest_same
    _verdict(
        11,
        ok,
        f"harness rerun byte-identical (json {json_same}, csv {csv_same}), "
        f"schedule digest identical ({digest_same})",
    )
    assert json_same
    assert csv_same
    assert digest_same
