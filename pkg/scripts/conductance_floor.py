#!/usr/bin/env python3
"""Measure how far reduction outputs sit above the conductance floor.

For each selected route, draws seeded G(n, p) instances, reduces them, and
certifies the output with the spectral lower bound (a pass is sound: the
bound never exceeds the exact conductance).  Prints a per-route summary
and optionally a JSON dump of every measured value.

Example:
    python3 scripts/conductance_floor.py --routes mcm,mvc --seeds 100
"""

import argparse
import json
import sys
from fractions import Fraction

from wter.conductance import spectral_lower_bound
from wter.generators import gen_gnp, named_instance
from wter.layer import LayerConfig, LayerMode, attach_layer
from wter.reductions import (
    wter_kclique,
    wter_mcm,
    wter_mds,
    wter_mvc,
    wter_subgraph_iso,
)
from wter.rng import SplitMix64, derive_seed

_SALT = 0xF10012


def _build(route: str, args):
    if route == "layer":
        return lambda g, i: attach_layer(
            g, LayerConfig(mode=LayerMode.STANDARD, c=args.c, seed=i)
        )
    if route == "mcm":
        return lambda g, i: wter_mcm(g, c=args.c, seed=i)
    if route == "mvc":
        return lambda g, i: wter_mvc(g, c=args.c, seed=i)
    if route == "kclique":
        return lambda g, i: wter_kclique(g, args.k, c=args.c, seed=i)
    if route == "siso":
        pattern = named_instance(args.pattern)
        return lambda g, i: wter_subgraph_iso(g, pattern, c=args.c, seed=i)
    if route == "mds":
        eps = Fraction(args.epsilon)
        return lambda g, i: wter_mds(g, eps, c=args.c, seed=i)
    raise SystemExit(f"unknown route {route!r}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument(
        "--routes", default="layer,mcm,mvc,kclique,siso,mds",
        help="comma list from layer,mcm,mvc,kclique,siso,mds",
    )
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--n-min", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--c", type=int, default=4)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--pattern", default="cycle:3")
    ap.add_argument("--epsilon", default="3/10")
    ap.add_argument("--threshold", type=float, default=0.01)
    ap.add_argument("--output", help="JSON file for the raw values")
    args = ap.parse_args(argv)

    dump = {}
    for route in args.routes.split(","):
        build = _build(route, args)
        threshold = args.threshold / args.k**2 if route == "kclique" else args.threshold
        values = []
        for i in range(args.seeds):
            rng = SplitMix64(derive_seed(_SALT, i))
            n = args.n_min + rng.randbelow(args.n_max - args.n_min + 1)
            g = gen_gnp(n, args.p, seed=derive_seed(_SALT, i, 1))
            bound = spectral_lower_bound(build(g, i).graph)
            values.append(bound.value if bound.connected else 0.0)
        passes = sum(v >= threshold for v in values)
        print(
            f"{route:8s} {passes}/{args.seeds} above {threshold:.5f}"
            f"  min {min(values):.5f}  max {max(values):.5f}"
        )
        dump[route] = {"threshold": threshold, "values": values}
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            json.dump(dump, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
