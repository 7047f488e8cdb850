#!/usr/bin/env python3
"""Sweep the 1D spectral reductions: exclusion minima over the pole index
and the radial admissibility window over the homogeneity degree.

    python scripts/spectral_sweep.py --m-max 4 --out sweep.csv
"""

import argparse
import csv
import sys

import numpy as np

from kwlab.spectral import exclusion_report, radial_admissible


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=3)
    ap.add_argument("--lambdas", type=str, default="0:2:0.125",
                    help="start:stop:step for the admissibility scan")
    ap.add_argument("--k", type=float, default=1.0)
    ap.add_argument("--out", type=str, default=None)
    args = ap.parse_args()

    rows = []
    for m in range(1, args.m_max + 1):
        for case in ("case2", "case3"):
            rep = exclusion_report(case, m)
            rows.append(["exclusion", case, m, f"{rep['mu_min']:.6f}",
                         f"{rep['excluded_interval'][0]:.4f}",
                         f"{rep['excluded_interval'][1]:.4f}"])
            print(f"{case} m={m}: mu_min={rep['mu_min']:.4f} "
                  f"excluded=({rep['excluded_interval'][0]:.3f}, "
                  f"{rep['excluded_interval'][1]:.3f})")
    lo, hi, st = (float(x) for x in args.lambdas.split(":"))
    for lam in np.arange(lo, hi + st / 2, st):
        rep = radial_admissible(float(lam), args.k)
        rows.append(["admissible", "", f"{lam:.4f}", rep["admissible"],
                     f"{rep['exponent_at_zero']:.4f}", ""])
        print(f"lambda={lam:.3f}: admissible={rep['admissible']} "
              f"(exponent at zero {rep['exponent_at_zero']:+.3f})")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kind", "case", "m_or_lambda", "value", "lo_or_exp", "hi"])
            w.writerows(rows)
        print(f"wrote {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
