"""``wter`` command line interface.

Exit codes: 0 success, 1 identity/guarantee violation, 2 bad input.
Graphs come from ``--input`` (edge-list file) or ``--instance`` (compact
generator spec, see :func:`wter.generators.named_instance`).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .conductance import (
    ConductanceCapError,
    exact_conductance,
    spectral_lower_bound,
)
from .decompose import expander_decompose, verify_decomposition
from .experiment import (
    CHECKS,
    ExperimentSpec,
    render_csv,
    render_json,
    run_experiment,
)
from .fourcycle import ed_wter_4cycle
from .generators import named_instance
from .graph import Graph, GraphInputError
from .io import format_edge_list, parse_edge_list
from .layer import LayerConfig, LayerMode, attach_layer
from .reductions import (
    IdentityViolation,
    recover,
    wter_4cycle_direct,
    wter_kclique,
    wter_mcm,
    wter_mds,
    wter_mvc,
    wter_subgraph_iso,
)
from .solvers import (
    WitnessError,
    fourcycle_brute,
    kclique_count,
    mcm_exact,
    mds_exact,
    mvc_exact,
    subgraph_iso_detect,
)

_REDUCE_ROUTES = ("mcm", "mvc", "kclique", "siso", "c4", "mds", "layer")
_SOLVE_ROUTES = ("mcm", "mvc", "mds", "kclique", "siso", "c4")


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="base RNG seed")
    sub.add_argument("--output", help="write result to this path instead of stdout")
    sub.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )


def _graph_flags(sub: argparse.ArgumentParser) -> None:
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--instance", help="generator spec like gnp:12:0.5")


def _load_graph(args) -> Graph:
    if args.input is not None:
        return parse_edge_list(args.input)
    return named_instance(args.instance, seed=args.seed)


def _load_pattern(spec: str) -> Graph:
    """Pattern from an edge-list file when the argument is a path, else a
    generator spec like cycle:4."""
    if os.path.exists(spec):
        return parse_edge_list(spec)
    return named_instance(spec)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, doc: dict) -> None:
    _emit(args, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _cmd_reduce(args) -> int:
    g = _load_graph(args)
    if args.route == "layer":
        return _reduce_layer(args, g)
    if args.route == "mcm":
        out = wter_mcm(g, c=args.c, seed=args.seed)
    elif args.route == "mvc":
        out = wter_mvc(g, c=args.c, seed=args.seed)
    elif args.route == "kclique":
        out = wter_kclique(g, args.k, c=args.c, seed=args.seed)
    elif args.route == "siso":
        if not args.pattern:
            raise GraphInputError("siso reduction needs --pattern")
        out = wter_subgraph_iso(g, _load_pattern(args.pattern), c=args.c, seed=args.seed)
    elif args.route == "c4":
        out = wter_4cycle_direct(g, c=args.c, seed=args.seed)
    else:
        if args.epsilon is None:
            raise GraphInputError("mds reduction needs --epsilon")
        out = wter_mds(g, args.epsilon, c=args.c, seed=args.seed)
    meta = {
        "problem": out.problem.value,
        "source_n": out.source_n,
        "N": out.graph.n,
        "M": out.graph.m,
        "additive": out.additive,
        "multiplicative": out.multiplicative,
        "layer_range": list(out.layer_range) if out.layer_range else None,
        "twin_range": list(out.twin_range) if out.twin_range else None,
        "copy_range": list(out.copy_range) if out.copy_range else None,
        "seed": out.seed,
        "flags": out.flags,
    }
    _emit(args, format_edge_list(out.graph))
    _emit_meta(args, meta)
    return 0


def _reduce_layer(args, g: Graph) -> int:
    attach = None
    if args.attach:
        attach = tuple(int(tok) for tok in args.attach.split(",") if tok != "")
    cfg = LayerConfig(
        mode=LayerMode(args.mode),
        c=args.c,
        epsilon=args.epsilon,
        attach_set=attach,
        seed=args.seed,
    )
    res = attach_layer(g, cfg)
    _emit(args, format_edge_list(res.graph))
    _emit_meta(
        args,
        {
            "mode": cfg.mode.value,
            "source_n": g.n,
            "N": res.graph.n,
            "M": res.graph.m,
            "layer_range": list(res.layer_range),
            "seed": res.seed,
            "c": cfg.c,
        },
    )
    return 0


def _emit_meta(args, meta: dict) -> None:
    if args.meta:
        with open(args.meta, "w", encoding="ascii", newline="\n") as fh:
            fh.write(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    else:
        sys.stderr.write(json.dumps(meta, sort_keys=True) + "\n")


def _cmd_solve(args) -> int:
    g = _load_graph(args)
    if args.route == "mcm":
        ans = mcm_exact(g)
    elif args.route == "mvc":
        ans = mvc_exact(g)
    elif args.route == "mds":
        ans = mds_exact(g)
    elif args.route == "kclique":
        ans = kclique_count(g, args.k)
    elif args.route == "siso":
        if not args.pattern:
            raise GraphInputError("siso solve needs --pattern")
        ans = subgraph_iso_detect(g, _load_pattern(args.pattern))
    else:
        ans = fourcycle_brute(g)
    _emit_json(
        args,
        {
            "problem": ans.problem,
            "value": ans.value,
            "witness": list(ans.witness) if ans.witness is not None else None,
        },
    )
    return 0


def _cmd_conductance(args) -> int:
    g = _load_graph(args)
    doc: dict = {"n": g.n, "m": g.m}
    if args.method in ("exact", "auto"):
        try:
            value, cut = exact_conductance(g, cap=args.cap)
            doc["method"] = "exact"
            doc["phi"] = str(value)
            doc["phi_float"] = float(value)
            doc["witness"] = list(cut.sorted_members()) if cut else None
            _emit_json(args, doc)
            return 0
        except ConductanceCapError:
            if args.method == "exact":
                raise
    bound = spectral_lower_bound(g)
    doc["method"] = "spectral"
    doc["phi"] = bound.value
    doc["connected"] = bound.connected
    doc["converged"] = bound.converged
    _emit_json(args, doc)
    return 0


def _cmd_decompose(args) -> int:
    g = _load_graph(args)
    phi = Fraction(args.phi)
    dec = expander_decompose(g, phi, seed=args.seed)
    report = verify_decomposition(g, dec, phi, seed=args.seed)
    doc = {
        "phi": args.phi,
        "clusters": [list(vs) for vs in dec.clusters],
        "certificates": [
            {"kind": c.kind, "bound": _bound_repr(c.bound)}
            for c in dec.certificates
        ],
        "outer_edges": dec.outer_count,
        "outer_budget": report.outer_budget,
        "within_budget": report.within_budget,
        "verified": report.ok,
    }
    _emit_json(args, doc)
    return 0 if report.ok else 1


def _cmd_c4(args) -> int:
    g = _load_graph(args)
    report = ed_wter_4cycle(g, args.epsilon, seed=args.seed)
    doc = {
        "found": report.found,
        "stage": report.stage,
        "witness": list(report.witness) if report.witness else None,
        "phi": str(report.phi) if report.phi is not None else None,
        "outer_edges": (
            report.decomposition.outer_count
            if report.decomposition is not None
            else 0
        ),
        "work_counters": {
            k: _bound_repr(v) for k, v in sorted(report.stats.items())
        },
    }
    if report.decomposition is not None:
        doc["clusters"] = len(report.decomposition.clusters)
    _emit_json(args, doc)
    return 0


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec(
        name=args.name,
        reduction=args.reduction,
        generator=args.generator,
        n_range=(args.n_min, args.n_max),
        p=args.p,
        trials=args.trials,
        base_seed=args.seed,
        c=args.c,
        epsilon=args.epsilon,
        k=args.k,
        pattern=args.pattern,
        phi=args.phi,
        instance=args.instance,
        checks=tuple(args.checks.split(",")) if args.checks else ("identity",),
        strict=not args.keep_going,
    )
    report = run_experiment(spec)
    text = render_json(report) if args.format == "json" else render_csv(report)
    _emit(args, text)
    return 0


def _bound_repr(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wter",
        description="Worst-case to expander-case graph reductions toolkit",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_reduce = subs.add_parser("reduce", help="emit a reduced instance")
    p_reduce.add_argument("route", choices=_REDUCE_ROUTES)
    _graph_flags(p_reduce)
    _common_flags(p_reduce)
    p_reduce.add_argument(
        "--C", "--c", dest="c", type=int, default=4, help="layer constant C"
    )
    p_reduce.add_argument("--k", type=int, default=3, help="clique size")
    p_reduce.add_argument("--pattern", help="pattern edge-list file or spec")
    p_reduce.add_argument("--epsilon", help="dominating-set epsilon")
    p_reduce.add_argument(
        "--mode",
        choices=tuple(m.value for m in LayerMode),
        default="standard",
        help="layer route only: which sizing mode to attach",
    )
    p_reduce.add_argument(
        "--attach", help="layer route only: comma list of attach vertices"
    )
    p_reduce.add_argument("--meta", help="write recovery metadata JSON here")
    p_reduce.set_defaults(func=_cmd_reduce)

    p_solve = subs.add_parser("solve", help="solve an instance exactly")
    p_solve.add_argument("route", choices=_SOLVE_ROUTES)
    _graph_flags(p_solve)
    _common_flags(p_solve)
    p_solve.add_argument("--k", type=int, default=3)
    p_solve.add_argument("--pattern", help="pattern instance spec")
    p_solve.set_defaults(func=_cmd_solve)

    p_cond = subs.add_parser("conductance", help="exact or spectral conductance")
    _graph_flags(p_cond)
    _common_flags(p_cond)
    p_cond.add_argument(
        "--method", choices=("exact", "spectral", "auto"), default="auto"
    )
    p_cond.add_argument(
        "--exact", action="store_const", const="exact", dest="method",
        help="force exact enumeration",
    )
    p_cond.add_argument(
        "--spectral", action="store_const", const="spectral", dest="method",
        help="force the spectral bound",
    )
    p_cond.add_argument("--cap", type=int, default=20, help="exact enumeration cap")
    p_cond.set_defaults(func=_cmd_conductance)

    p_dec = subs.add_parser("decompose", help="expander decomposition")
    _graph_flags(p_dec)
    _common_flags(p_dec)
    p_dec.add_argument("--phi", default="1/10", help="target conductance (fraction)")
    p_dec.set_defaults(func=_cmd_decompose)

    p_c4 = subs.add_parser("c4", help="decomposition-routed 4-cycle detection")
    _graph_flags(p_c4)
    _common_flags(p_c4)
    p_c4.add_argument("--epsilon", default="1/4", help="exponent parameter")
    p_c4.add_argument(
        "--oracle",
        choices=("brute",),
        default="brute",
        help="per-cluster detector (only the exact one ships)",
    )
    p_c4.set_defaults(func=_cmd_c4)

    p_exp = subs.add_parser("experiment", help="run a reproducible batch")
    _common_flags(p_exp)
    p_exp.add_argument("--name", default="experiment")
    p_exp.add_argument("--reduction", required=True)
    p_exp.add_argument("--generator", default="gnp")
    p_exp.add_argument("--n-min", type=int, default=8)
    p_exp.add_argument("--n-max", type=int, default=12)
    p_exp.add_argument("--p", default="0.5")
    p_exp.add_argument("--trials", type=int, default=10)
    p_exp.add_argument("--c", type=int, default=4)
    p_exp.add_argument("--epsilon")
    p_exp.add_argument("--k", type=int)
    p_exp.add_argument("--pattern")
    p_exp.add_argument("--phi")
    p_exp.add_argument("--instance")
    p_exp.add_argument(
        "--checks", default="identity", help=f"comma list from {CHECKS}"
    )
    p_exp.add_argument(
        "--keep-going",
        action="store_true",
        help="record identity failures instead of aborting",
    )
    p_exp.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IdentityViolation, WitnessError) as exc:
        sys.stderr.write(f"identity violation: {exc}\n")
        return 1
    except GraphInputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
