#!/usr/bin/env python3
"""Sweep every reduction route through the experiment harness.

Each route runs `--trials` seeded instances with the identity check on;
any disagreement between the recovered and the directly computed optimum
aborts with exit code 1.  Reports land in --outdir as JSON, one per route.

Example:
    python3 scripts/identity_sweep.py --trials 40 --outdir reports/
"""

import argparse
import os
import sys

from wter.experiment import ExperimentSpec, run_experiment, write_report
from wter.reductions import IdentityViolation

ROUTES = (
    ("mcm", {"n_range": (2, 40)}),
    ("mvc", {"n_range": (2, 14)}),
    ("kclique", {"n_range": (2, 12), "k": 3}),
    ("subgraph_iso", {"n_range": (3, 12), "pattern": "cycle:4"}),
    ("fourcycle", {"n_range": (4, 12)}),
    ("mds", {"n_range": (2, 14), "epsilon": "3/10"}),
    ("fourcycle_ed", {"n_range": (4, 60), "epsilon": "1/4"}),
    ("decompose", {"n_range": (4, 16), "phi": "1/10"}),
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--outdir", help="write one JSON report per route here")
    ap.add_argument(
        "--keep-going",
        action="store_true",
        help="record identity failures instead of aborting",
    )
    args = ap.parse_args(argv)

    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
    worst = 0
    for route, extra in ROUTES:
        spec = ExperimentSpec(
            name=f"identity-{route}",
            reduction=route,
            p=args.p,
            trials=args.trials,
            base_seed=args.seed,
            strict=not args.keep_going,
            **extra,
        )
        try:
            report = run_experiment(spec)
        except IdentityViolation as exc:
            print(f"{route:14s} FAILED: {exc}")
            return 1
        failures = report.summary["identity_failures"]
        worst = max(worst, failures)
        print(f"{route:14s} {args.trials - failures}/{args.trials} identities hold")
        if args.outdir:
            write_report(report, os.path.join(args.outdir, f"{route}.json"))
    return 1 if worst else 0


if __name__ == "__main__":
    sys.exit(main())
