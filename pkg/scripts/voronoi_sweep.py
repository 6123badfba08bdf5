"""Residuals of the three Voronoi identities over all (a, c) at two tolerances."""

import argparse
import math
import sys
import time

from zagierlab import voronoi
from zagierlab.cli import write_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--form", choices=voronoi.FORMS, default="printed")
    ap.add_argument("--c", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8, 10, 12])
    ap.add_argument("--tol", type=float, nargs=2, default=[1e-7, 1e-8])
    args = ap.parse_args()
    phi = voronoi.bump(1, 300)
    start = time.perf_counter()
    rows = []
    for c in args.c:
        for a in (a for a in range(1, c + 1) if math.gcd(a, c) == 1):
            loose, tight = (voronoi.voronoi_check(voronoi.case_of(c), phi, a, c, t, args.form) for t in args.tol)
            ratio = loose.residual / tight.residual if tight.residual > 0 else math.inf
            rows.append((voronoi.case_of(c), a, c, args.form, loose.residual, tight.residual, ratio))
    write_csv(("case", "a", "c", "form", "residual_loose", "residual_tight", "ratio"), rows, sys.stdout)
    print(f"# {len(rows)} pairs in {time.perf_counter() - start:.0f} s", file=sys.stderr)


if __name__ == "__main__":
    main()
