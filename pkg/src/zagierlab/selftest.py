"""Fast invariant checks shared by the ``selftest`` subcommand.

Each check returns (passed, detail).  They cover exact identities and
dual-route agreements only; the known-failing printed-form comparisons live
in the acceptance suite, not here.
"""

from __future__ import annotations

import cmath
import math
import random
from typing import Callable

import numpy as np

from . import arith, asymptotics, lseries, moment, theta, voronoi

Check = Callable[[], tuple[bool, str]]


def _jacobi_reciprocity() -> tuple[bool, str]:
    bad = 0
    for m in range(1, 200, 2):
        for n in range(1, 200, 2):
            if math.gcd(m, n) != 1:
                continue
            sign = -1 if (m % 4 == 3 and n % 4 == 3) else 1
            bad += arith.jacobi_classical(m, n) * arith.jacobi_classical(n, m) != sign
    return bad == 0, f"{bad} reciprocity failures"


def _theta_half_modulus() -> tuple[bool, str]:
    worst = 0.0
    for c in range(2, 200, 4):
        ref = theta.theta1_row(c // 2)
        for n in range(-50, 51):
            t1 = ref[n % (c // 2)]
            worst = max(worst, abs(theta.theta4(c, n).value - t1), abs(theta.theta5(c, n).value - t1))
    return worst < 1e-12, f"max gap {worst:.3g}"


def _theta_rows() -> tuple[bool, str]:
    worst = 0.0
    for c in (4, 8, 12, 20, 36):
        row = theta.theta0_row(c)
        worst = max(worst, max(abs(theta.theta0(c, n).value - row[n % c]) for n in range(c)))
    for c in (1, 3, 5, 9, 15, 21):
        row = theta.theta1_row(c)
        worst = max(worst, max(abs(theta.theta1(c, n).value - row[n % c]) for n in range(c)))
    return worst < 1e-11, f"scalar vs FFT {worst:.3g}"


def _q_factor() -> tuple[bool, str]:
    rng = random.Random(7)
    worst = 0.0
    for _ in range(20):
        n = rng.choice([k for k in range(1, 2000) if k % 4 in (0, 1)])
        w = complex(rng.uniform(-2, 3), rng.uniform(-5, 5))
        n1 = arith.squarefree_decompose(n)[1]
        n1 >>= arith.valuation(n1, 2)  # the product skips p = 2
        lhs = lseries.q_factor(w, n)
        rhs = n1 ** (1 - 2 * w) * lseries.q_factor(1 - w, n)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst < 1e-12, f"functional equation {worst:.3g}"


def _zagier_dual_route() -> tuple[bool, str]:
    worst = 0.0
    for n in range(1, 120):
        if n % 4 in (2, 3):
            continue
        v = lseries.zagier_L(3.0, n)
        s = v.cross_check
        worst = max(worst, abs(v.value - s.value) / (v.truncation_error + s.truncation_error + 1e-13))
    return worst <= 1.0, f"gap / recorded error {worst:.3g}"


def _voronoi_derived() -> tuple[bool, str]:
    phi = voronoi.bump(1, 300)
    worst = 0.0
    for case, c in (("c0mod4", 4), ("codd", 3), ("c2mod4", 6)):
        r = voronoi.voronoi_check(case, phi, 1, c, 1e-6, "derived")
        worst = max(worst, r.residual)
    return worst < 1e-6, f"max residual {worst:.3g}"


def _v_contour() -> tuple[bool, str]:
    gap = max(abs(asymptotics.V_weight(y, 20, 0.5) - asymptotics.V_weight(y, 20, 1.5)) for y in (1, 20, 200))
    return gap < 1e-8, f"contour gap {gap:.3g}"


def _legendre_route() -> tuple[bool, str]:
    r = np.linspace(-30, 30, 13)
    a = asymptotics._hyp_factor(r, 3.0, "legendre")
    b = asymptotics._hyp_factor(r, 3.0, "hypergeometric")
    gap = float(np.max(np.abs(a - b) / np.abs(b)))
    return gap < 1e-10, f"Legendre vs 2F1 {gap:.3g}"


def _delta_identity() -> tuple[bool, str]:
    ok = all(moment.delta_identity_check(q, 300) for q in range(1, 121))
    return ok, "q <= 120, l <= 300"


def _parity() -> tuple[bool, str]:
    direct, combo = moment.parity_decomposition(moment.MomentConfig(40, 4))
    gap = abs(direct - combo) / max(abs(direct), 1e-300)
    return gap < 1e-10, f"relative gap {gap:.3g}"


def _hecke_closure() -> tuple[bool, str]:
    rng = np.random.default_rng(3)
    lam = {1: 1.0, **{int(p): float(2 * math.cos(x)) for p, x in zip(arith.primes_up_to(200), rng.uniform(0, math.pi, 60))}}
    d = moment.SpectralDatum(10.0, lam)
    worst = 0.0
    for m in range(1, 40):
        for n in range(1, 40):
            rhs = sum(moment.hecke_extend(d, m * n // (e * e)) for e in arith.divisors(math.gcd(m, n)))
            worst = max(worst, abs(moment.hecke_extend(d, m) * moment.hecke_extend(d, n) - rhs))
    return worst < 1e-8, f"max gap {worst:.3g}"


def _epsilon() -> tuple[bool, str]:
    ok = all(abs(arith.epsilon_d(d) - (1 if d % 4 == 1 else 1j)) == 0 for d in range(1, 99, 2))
    ok &= abs(cmath.phase(arith.epsilon_d(3)) - math.pi / 2) < 1e-15
    return ok, "eps_d in {1, i}"


CHECKS: dict[str, Check] = {
    "jacobi-reciprocity": _jacobi_reciprocity,
    "epsilon": _epsilon,
    "theta-rows": _theta_rows,
    "theta-half-modulus": _theta_half_modulus,
    "q-factor-fe": _q_factor,
    "zagier-dual-route": _zagier_dual_route,
    "voronoi-derived": _voronoi_derived,
    "v-contour": _v_contour,
    "legendre-route": _legendre_route,
    "delta-identity": _delta_identity,
    "parity-decomposition": _parity,
    "hecke-closure": _hecke_closure,
}


def run(names=None) -> list[tuple[str, bool, str]]:
    out = []
    for name in names or CHECKS:
        try:
            ok, detail = CHECKS[name]()
        except Exception as exc:  # a crash is a failed check, reported in one row
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
