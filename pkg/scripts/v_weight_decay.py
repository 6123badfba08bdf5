"""|V(y, t)| along y = k t, showing how slowly the smooth weight decays past y = t."""

import argparse
import sys

import numpy as np

from zagierlab.asymptotics import V_weight_array
from zagierlab.cli import write_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, nargs="+", default=[10, 20, 30])
    ap.add_argument("--k", type=float, nargs="+", default=[0.1, 1, 10, 20, 40, 80, 160, 320])
    args = ap.parse_args()
    rows = []
    for t in args.t:
        vals = V_weight_array(np.array(args.k) * t, t)
        rows += [(t, k, k * t, abs(v)) for k, v in zip(args.k, vals)]
    write_csv(("t", "k", "y", "abs_V"), rows, sys.stdout)


if __name__ == "__main__":
    main()
