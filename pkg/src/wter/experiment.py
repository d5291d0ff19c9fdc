"""Batch experiment harness with byte-reproducible reports.

An :class:`ExperimentSpec` names an instance generator, a reduction
route and a trial count; :func:`run_experiment` executes the trials
(trial i draws its own RNG stream from ``base_seed + i``), cross-checks
every one, and returns a report that renders to canonical JSON and CSV:
keys sorted, columns in first-seen order, floats through repr/%.12g.
Same spec, same bytes.

Identity checks are hard: any failure raises
:class:`~wter.reductions.IdentityViolation` (unless ``strict=False``,
which records it for inspection).  Conductance and blow-up checks are
statistical and only reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from io import StringIO

from .conductance import ConductanceCapError, exact_conductance, spectral_lower_bound
from .decompose import expander_decompose, verify_decomposition
from .fourcycle import ed_wter_4cycle
from .generators import gen_c4_free, gen_gnp, gen_planted, named_instance
from .graph import Graph, GraphInputError
from .layer import LayerConfig, LayerMode, as_fraction, attach_layer
from .reductions import (
    IdentityViolation,
    ReductionOutput,
    recover,
    wter_4cycle_direct,
    wter_kclique,
    wter_mcm,
    wter_mds,
    wter_mvc,
    wter_subgraph_iso,
)
from .rng import SplitMix64, derive_seed
from .solvers import (
    fourcycle_brute,
    kclique_count,
    mcm_exact,
    mds_exact,
    mvc_exact,
    subgraph_iso_detect,
)

SCHEMA_VERSION = 1

_SALT_SIZE = 0x515E

REDUCTIONS = (
    "mcm",
    "mvc",
    "kclique",
    "subgraph_iso",
    "fourcycle",
    "mds",
    "fourcycle_ed",
    "decompose",
    "layer",
)
GENERATORS = ("gnp", "planted_c4", "c4_free", "named")
CHECKS = ("identity", "conductance_exact", "conductance_spectral", "blowup")


@dataclass(frozen=True)
class ExperimentSpec:
    """One batch: what to generate, which route to drive, what to check."""

    name: str
    reduction: str
    generator: str = "gnp"
    n_range: tuple[int, int] = (8, 12)
    p: str | float = 0.5
    trials: int = 10
    base_seed: int = 0
    c: int = 4
    epsilon: str | float | None = None
    k: int | None = None
    pattern: str | None = None
    phi: str | None = None
    instance: str | None = None
    checks: tuple[str, ...] = ("identity",)
    strict: bool = True

    def __post_init__(self):
        if self.reduction not in REDUCTIONS:
            raise GraphInputError(f"unknown reduction {self.reduction!r}")
        if self.generator not in GENERATORS:
            raise GraphInputError(f"unknown generator {self.generator!r}")
        if self.generator == "named" and not self.instance:
            raise GraphInputError("generator 'named' needs an instance spec")
        for ch in self.checks:
            if ch not in CHECKS:
                raise GraphInputError(f"unknown check {ch!r}")
        if self.trials < 1:
            raise GraphInputError("trials must be positive")
        lo, hi = self.n_range
        if not 1 <= lo <= hi:
            raise GraphInputError("n_range must satisfy 1 <= lo <= hi")


@dataclass(frozen=True)
class ExperimentReport:
    spec: ExperimentSpec
    rows: tuple[dict, ...]
    summary: dict
    schema: int = SCHEMA_VERSION


def trial_graph(spec: ExperimentSpec, index: int) -> tuple[Graph, int]:
    """Instance for trial ``index``; returns (graph, trial seed)."""
    seed = spec.base_seed + index
    rng = SplitMix64(derive_seed(seed, _SALT_SIZE))
    lo, hi = spec.n_range
    n = lo + rng.randbelow(hi - lo + 1)
    if spec.generator == "gnp":
        return gen_gnp(n, spec.p, seed), seed
    if spec.generator == "planted_c4":
        return gen_planted("c4", gen_gnp(max(n, 4), spec.p, seed), seed), seed
    if spec.generator == "c4_free":
        return gen_c4_free(n, seed), seed
    return named_instance(spec.instance, seed), seed


def _reduce_and_solve(spec: ExperimentSpec, g: Graph, seed: int):
    """Returns (reduction output, reduced answer, direct answer)."""
    if spec.reduction == "mcm":
        out = wter_mcm(g, c=spec.c, seed=seed)
        return out, mcm_exact(out.graph), mcm_exact(g)
    if spec.reduction == "mvc":
        out = wter_mvc(g, c=spec.c, seed=seed)
        return out, mvc_exact(out.graph), mvc_exact(g)
    if spec.reduction == "kclique":
        k = spec.k if spec.k is not None else 3
        out = wter_kclique(g, k, c=spec.c, seed=seed)
        return out, kclique_count(out.graph, k), kclique_count(g, k)
    if spec.reduction == "subgraph_iso":
        if spec.pattern is None:
            raise GraphInputError("subgraph_iso experiments need a pattern")
        h = named_instance(spec.pattern)
        out = wter_subgraph_iso(g, h, c=spec.c, seed=seed)
        return out, subgraph_iso_detect(out.graph, h), subgraph_iso_detect(g, h)
    if spec.reduction == "fourcycle":
        out = wter_4cycle_direct(g, c=spec.c, seed=seed)
        return out, fourcycle_brute(out.graph), fourcycle_brute(g)
    if spec.reduction == "mds":
        if spec.epsilon is None:
            raise GraphInputError("mds experiments need epsilon")
        out = wter_mds(g, spec.epsilon, c=spec.c, seed=seed)
        return out, mds_exact(out.graph), mds_exact(g)
    raise GraphInputError(f"reduction {spec.reduction!r} has no identity route")


def _conductance_columns(spec: ExperimentSpec, row: dict, gp: Graph) -> None:
    if "conductance_spectral" in spec.checks:
        row["phi_spectral"] = spectral_lower_bound(gp).value
    if "conductance_exact" in spec.checks:
        try:
            value, _cut = exact_conductance(gp)
            row["phi_exact"] = str(value)
        except ConductanceCapError:
            row["phi_exact"] = None


def _run_reduction_trial(spec: ExperimentSpec, index: int) -> dict:
    g, seed = trial_graph(spec, index)
    row: dict = {"index": index, "seed": seed, "n": g.n, "m": g.m}
    out, reduced_ans, direct_ans = _reduce_and_solve(spec, g, seed)
    rec = recover(out, reduced_ans)
    row["N"] = out.graph.n
    row["M"] = out.graph.m
    row["value_reduced"] = _plain(reduced_ans.value)
    row["value_direct"] = _plain(direct_ans.value)
    row["value_recovered"] = _plain(rec.value)
    if "identity" in spec.checks:
        row["identity_ok"] = rec.value == direct_ans.value
    _conductance_columns(spec, row, out.graph)
    if "blowup" in spec.checks:
        row["blowup_ok"] = _blowup_ok(spec, g, out)
        if out.flags:
            row["q_size"] = out.flags.get("q_size")
            row["q_oversized"] = out.flags.get("q_oversized")
    return row


def _run_layer_trial(spec: ExperimentSpec, index: int) -> dict:
    """Bare standard-layer trial: the conductance-floor experiment."""
    g, seed = trial_graph(spec, index)
    result = attach_layer(
        g, LayerConfig(mode=LayerMode.STANDARD, c=spec.c, seed=seed)
    )
    row = {
        "index": index,
        "seed": seed,
        "n": g.n,
        "m": g.m,
        "N": result.graph.n,
        "M": result.graph.m,
    }
    _conductance_columns(spec, row, result.graph)
    return row


def _blowup_ok(spec: ExperimentSpec, g: Graph, out: ReductionOutput) -> bool:
    """Vertex blow-up stays within the route's stated budget."""
    if out.problem.value == "mds":
        eps = as_fraction(spec.epsilon)
        return Fraction(out.graph.n) <= g.n + 26 * eps * g.n
    if out.problem.value == "mcm":
        return out.graph.n == 11 * g.n
    return out.graph.n >= g.n


def _run_fourcycle_ed_trial(spec: ExperimentSpec, index: int) -> dict:
    g, seed = trial_graph(spec, index)
    eps = as_fraction(spec.epsilon) if spec.epsilon is not None else Fraction(1, 4)
    report = ed_wter_4cycle(g, eps, seed=seed)
    truth = fourcycle_brute(g)
    row = {
        "index": index,
        "seed": seed,
        "n": g.n,
        "m": g.m,
        "found": report.found,
        "expected": truth.value,
        "identity_ok": report.found == truth.value,
        "stage": report.stage,
        "witness": list(report.witness) if report.witness else None,
    }
    if report.decomposition is not None:
        row["clusters"] = len(report.decomposition.clusters)
        row["outer_edges"] = report.decomposition.outer_count
    return row


def _run_decompose_trial(spec: ExperimentSpec, index: int) -> dict:
    g, seed = trial_graph(spec, index)
    phi = Fraction(spec.phi) if spec.phi is not None else Fraction(1, 10)
    dec = expander_decompose(g, phi, seed=seed)
    report = verify_decomposition(g, dec, phi, seed=seed)
    return {
        "index": index,
        "seed": seed,
        "n": g.n,
        "m": g.m,
        "clusters": len(dec.clusters),
        "outer_edges": dec.outer_count,
        "outer_budget": report.outer_budget,
        "within_budget": report.within_budget,
        "identity_ok": report.ok,
    }


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    rows = []
    for i in range(spec.trials):
        if spec.reduction == "fourcycle_ed":
            row = _run_fourcycle_ed_trial(spec, i)
        elif spec.reduction == "decompose":
            row = _run_decompose_trial(spec, i)
        elif spec.reduction == "layer":
            row = _run_layer_trial(spec, i)
        else:
            row = _run_reduction_trial(spec, i)
        rows.append(row)
    failed_seeds = [r["seed"] for r in rows if r.get("identity_ok") is False]
    summary: dict = {
        "trials": spec.trials,
        "identity_failures": len(failed_seeds),
        "failed_seeds": failed_seeds,
    }
    if any("blowup_ok" in r for r in rows):
        summary["blowup_pass"] = sum(1 for r in rows if r.get("blowup_ok"))
    if any("phi_spectral" in r for r in rows):
        values = [r["phi_spectral"] for r in rows if "phi_spectral" in r]
        summary["phi_spectral_min"] = min(values)
        summary["phi_floor_pass"] = sum(1 for v in values if v >= 0.01)
    if failed_seeds and spec.strict:
        raise IdentityViolation(
            f"{spec.name}: {len(failed_seeds)} of {spec.trials} trials "
            f"failed the identity check (seeds {failed_seeds[:10]})"
        )
    return ExperimentReport(spec=spec, rows=tuple(rows), summary=summary)


# ---------------------------------------------------------------- rendering


def _plain(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, float, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def _spec_dict(spec: ExperimentSpec) -> dict:
    return {
        "name": spec.name,
        "reduction": spec.reduction,
        "generator": spec.generator,
        "n_range": list(spec.n_range),
        "p": _plain(spec.p),
        "trials": spec.trials,
        "base_seed": spec.base_seed,
        "c": spec.c,
        "epsilon": _plain(spec.epsilon),
        "k": spec.k,
        "pattern": spec.pattern,
        "phi": spec.phi,
        "instance": spec.instance,
        "checks": list(spec.checks),
    }


def render_json(report: ExperimentReport) -> str:
    doc = {
        "schema": report.schema,
        "spec": _spec_dict(report.spec),
        "summary": {k: _plain(v) for k, v in report.summary.items()},
        "rows": [
            {k: _plain(v) for k, v in row.items()} for row in report.rows
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.12g" % value
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def render_csv(report: ExperimentReport) -> str:
    keys: list[str] = []
    for row in report.rows:
        for k in row:
            if k not in keys:
                keys.append(k)
    out = StringIO()
    out.write(",".join(keys) + "\n")
    for row in report.rows:
        out.write(",".join(_csv_cell(_plain(row.get(k))) for k in keys) + "\n")
    return out.getvalue()


def write_report(report: ExperimentReport, path: str, fmt: str = "json") -> None:
    text = render_json(report) if fmt == "json" else render_csv(report)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
