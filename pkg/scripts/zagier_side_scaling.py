"""Growth in T of the bilinear (q, r) sums at fixed G, absolute and signed."""

import argparse
import sys

from zagierlab.cli import write_csv
from zagierlab.moment import MomentConfig, zagier_side_sum


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=float, nargs="+", default=[40, 80, 160])
    ap.add_argument("--G", type=float, default=4.0)
    ap.add_argument("--range-constant", type=float, default=10.0)
    args = ap.parse_args()
    rows, prev = [], {}
    for T in args.T:
        cfg = MomentConfig(T, args.G, range_constant=args.range_constant)
        for signed in (False, True):
            r = zagier_side_sum(cfg, "**", signed=signed)
            size = abs(r.value)
            ratio = size / prev[signed] if prev.get(signed) else float("nan")
            prev[signed] = size
            rows.append((T, args.G, "signed" if signed else "absolute", size, r.terms, ratio))
    write_csv(("T", "G", "kind", "abs_value", "terms", "ratio_to_previous"), rows, sys.stdout)


if __name__ == "__main__":
    main()
