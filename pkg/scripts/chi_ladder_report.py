#!/usr/bin/env python3
"""Run the precision-ladder diagnostics for the scaled-chi weight.

Reproduces the two headline diagnostic runs for the distribution of
R/sqrt(m), R ~ chi_m:

* m = 2,   n = 5   (well-conditioned; binary64 output stable from rung 1)
* m = 160, n = 17  (harder; stability expected from rung 2)

and prints the per-rung bit counts, the d_tau / d_lambda convergence
diagnostics, the L certification indices, and the stage timings.

Usage: chi_ladder_report.py [--m M --nodes N] [--rungs M] [--b1 B] [--step S]
(with no arguments, runs both headline configurations)
"""

from __future__ import annotations

import argparse
import sys

from momentquad import LadderConfig, run_ladder, scaled_chi


def show(m: float, n: int, rungs: int = 5, b1: int | None = None, step: int = 34) -> str:
    cfg = LadderConfig(n=n, rungs=rungs, b1=b1, step=step)
    report = run_ladder(scaled_chi(m), cfg)
    print(f"scaled chi, m={m:g}, n={n}")
    print(f"  bits:      {' '.join(str(b) for b in report.bits)}")
    print(f"  status:    {report.status}")
    for j, cause in report.failures:
        print(f"  rung {j} failed: {cause}")
    d_tau = " ".join("-" if d is None else f"{float(d):.2e}" for d in report.d_tau)
    d_lam = " ".join("-" if d is None else f"{float(d):.2e}" for d in report.d_lambda)
    print(f"  d_tau:     {d_tau}")
    print(f"  d_lambda:  {d_lam}")
    print(f"  L_nodes:   {report.l_nodes}    L_weights: {report.l_weights}")
    rows = ("moments+recurrence", "root finding      ", "weight solving    ")
    for label, row in zip(rows, report.timings):
        cells = " ".join("   -  " if t is None else f"{t:6.3f}" for t in row)
        print(f"  {label} [s]: {cells}")
    if report.final_nodes is not None:
        print("  final binary64 nodes:")
        for x in report.final_nodes:
            print(f"    {x!r}")
        print("  final binary64 weights:")
        for w in report.final_weights:
            print(f"    {w!r}")
    print()
    return report.status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=float, help="chi degrees of freedom")
    parser.add_argument("-n", "--nodes", type=int, help="rule size")
    parser.add_argument("--rungs", type=int, default=5)
    parser.add_argument("--b1", type=int, default=None)
    parser.add_argument("--step", type=int, default=34)
    args = parser.parse_args(argv)

    if (args.m is None) != (args.nodes is None):
        parser.error("--m and --nodes must be given together")
    if args.m is not None:
        status = show(args.m, args.nodes, args.rungs, args.b1, args.step)
        return 0 if status == "ok" else 1
    ok = True
    for m, n in ((2, 5), (160, 17)):
        ok &= show(m, n, args.rungs, args.b1, args.step) == "ok"
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
