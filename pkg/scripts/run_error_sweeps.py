#!/usr/bin/env python3
"""Error sweeps over seeded instances for every family and scheme.

Writes one CSV per (family, scheme) with the measured error and all
applicable closed-form bounds over a doubling range of step counts, plus
a summary table of fitted decay orders.  Deterministic in --seed.

Usage:
    python scripts/run_error_sweeps.py --outdir sweeps --instances 5
"""

import argparse
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from jbtrotter.algebras import AlgebraDescriptor, random_element
from jbtrotter.trotter import DegenerateDecayError, empirical_order, sweep

FAMILIES = (
    AlgebraDescriptor("sym", 6),
    AlgebraDescriptor("herm", 4),
    AlgebraDescriptor("spin", 8),
    AlgebraDescriptor("albert", 3),
)
COLUMNS = (
    "instance,scheme,n,error,bound_thm31,bound_thm33i,bound_thm33ii,"
    "bound_special_i,bound_special_ii"
)


def fmt(value):
    return "" if value is None else repr(float(value))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="sweeps", help="directory for CSV output")
    ap.add_argument("--instances", type=int, default=5, help="instances per family")
    ap.add_argument("--m", type=int, default=3, help="elements per instance (odd keeps h available)")
    ap.add_argument("--nmax", type=int, default=512, help="largest step count (doubling from 1)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if args.m < 2:
        ap.error("--m must be at least 2")
    ns = []
    n = 1
    while n <= args.nmax:
        ns.append(n)
        n *= 2
    schemes = ["g", "f"] + (["h"] if args.m % 2 == 1 and args.m >= 3 else [])

    os.makedirs(args.outdir, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    summary = []
    for desc in FAMILIES:
        instances = []
        for i in range(args.instances):
            elems = [
                random_element(desc, int(rng.integers(0, 2**62)), float(rng.uniform(0.3, 1.0)))
                for _ in range(args.m)
            ]
            instances.append(elems)
        for scheme in schemes:
            rows = [COLUMNS]
            orders = []
            for i, elems in enumerate(instances):
                recs = sweep(scheme, elems, ns)
                for rec in recs:
                    rows.append(
                        ",".join(
                            [
                                str(i),
                                rec.scheme,
                                str(rec.n),
                                fmt(rec.error),
                                fmt(rec.bound_thm31),
                                fmt(rec.bound_thm33i),
                                fmt(rec.bound_thm33ii),
                                fmt(rec.bound_special_i),
                                fmt(rec.bound_special_ii),
                            ]
                        )
                    )
                # fit the asymptotic tail when it is long enough, else use
                # everything above the error floor
                tail = [r for r in recs if r.n >= 32]
                for candidate in (tail, recs):
                    try:
                        orders.append(empirical_order(candidate))
                        break
                    except (DegenerateDecayError, ValueError):
                        continue
            path = os.path.join(args.outdir, f"{desc.kind}{desc.dim}_{scheme}.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("\n".join(rows) + "\n")
            mid = float(np.median(orders)) if orders else float("nan")
            summary.append((str(desc), scheme, len(instances), mid))
            print(f"wrote {path} ({len(rows) - 1} rows)")

    print("\nfamily      scheme  instances  median_order")
    for name, scheme, count, order in summary:
        print(f"{name:<11} {scheme:<7} {count:<10d} {order:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
