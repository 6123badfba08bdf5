"""Freeze the extended symbol (c/d) for |c|, |d| <= 15, d odd, from a brute-force rule.

Jacobi symbols come from Euler's criterion prime by prime; the d < 0
convention is the one of the theta multiplier: (c/d) = (c/|d|), negated when
c < 0 and d < 0, and (0/d) = 1 exactly when |d| = 1.
"""

import csv
import sys
from pathlib import Path


def legendre_euler(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi_brute(a: int, m: int) -> int:
    out, p, rest = 1, 3, m
    while rest > 1:
        while rest % p == 0:
            out *= legendre_euler(a, p)
            rest //= p
        p += 2
    return out


def shimura_brute(c: int, d: int) -> int:
    if c == 0:
        return 1 if abs(d) == 1 else 0
    value = jacobi_brute(c, abs(d))
    return -value if (c < 0 and d < 0) else value


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parents[1] / "tests/data/shimura_table.csv"
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("c", "d", "symbol"))
        for c in range(-15, 16):
            for d in range(-15, 16, 2):
                w.writerow((c, d, shimura_brute(c, d)))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
