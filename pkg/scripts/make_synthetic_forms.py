"""Write synthetic Hecke eigenvalue records for exercising the moment pipeline.

The λ(p) are Sato-Tate samples, not eigenvalues of actual Maass forms.  The
spectral parameters are the first few even SL2(Z) values rounded to 4 digits,
used only to place the weights at realistic heights.
"""

import argparse
from pathlib import Path

import numpy as np

from zagierlab import arith
from zagierlab.moment import SpectralDatum, format_record, hecke_extend

T_VALUES = (9.5337, 12.1730, 13.7798, 14.3585, 16.1381)


def sato_tate(rng: np.random.Generator, size: int) -> np.ndarray:
    """2 cos θ with density (2/π) sin²θ on [0, π], by rejection."""
    out = np.empty(0)
    while len(out) < size:
        theta = rng.uniform(0, np.pi, 4 * size)
        keep = rng.uniform(0, 1, 4 * size) < np.sin(theta) ** 2
        out = np.concatenate([out, theta[keep]])
    return 2 * np.cos(out[:size])


def synthetic_form(t: float, rng: np.random.Generator, p_max: int, n_dense: int) -> SpectralDatum:
    primes = [int(p) for p in arith.primes_up_to(p_max)]
    lam = {1: 1.0, **dict(zip(primes, map(float, sato_tate(rng, len(primes)))))}
    seed = SpectralDatum(t, lam)
    dense = {n: hecke_extend(seed, n) for n in range(1, n_dense + 1)}
    return SpectralDatum(t, {**lam, **dense}, 1.0, "synthetic-sato-tate")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).parents[1] / "src/zagierlab/data/synthetic_forms.txt")
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--p-max", type=int, default=8192)
    ap.add_argument("--n-dense", type=int, default=200)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    lines = [f"# synthetic Sato-Tate eigenvalues, seed={args.seed}; not real Maass form data"]
    lines += [format_record(synthetic_form(t, rng, args.p_max, args.n_dense)) for t in T_VALUES]
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(T_VALUES)} records to {args.out}")


if __name__ == "__main__":
    main()
