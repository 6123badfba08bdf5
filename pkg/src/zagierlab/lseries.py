"""Quadratic Dirichlet L-functions, Zagier L-series and the L*(w, n) apparatus."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import special as sp

from . import arith
from .special import EULER_GAMMA, hurwitz_zeta, zeta, zeta2

METHODS = ("direct-series", "hurwitz", "smoothed", "factored")


@dataclass(frozen=True)
class LValue:
    s: complex
    label: int
    value: complex
    method: str
    truncation_error: float
    cross_check: "LValue | None" = field(default=None, compare=False)

    def csv_row(self) -> tuple:
        return (self.label, self.value.real, self.value.imag, self.method, self.truncation_error)


@dataclass(frozen=True)
class R2Factor:
    s: complex
    n: int
    value: complex


# ---------------------------------------------------------------------------
# Dirichlet L-functions of quadratic characters


def _check_discriminant(D: int) -> None:
    if not arith.is_fundamental(D):
        raise ValueError(f"{D} is not a fundamental discriminant")


def _hurwitz_L(s: complex, D: int) -> tuple[complex, float]:
    q = abs(D)
    if q == 1:
        v, err = hurwitz_zeta(s, 1.0, return_error=True)
        return complex(v), float(err)
    chi = arith.kronecker_table(D, q)[1:]
    a = np.nonzero(chi)[0] + 1
    if abs(s - 1) < 1e-14:
        # the poles cancel; the constant terms are -digamma(a/q)
        value = -np.sum(chi[a - 1] * sp.digamma(a / q)) / q
        return complex(value), 1e-15 * float(np.sum(np.abs(sp.digamma(a / q)))) / q
    vals, errs = hurwitz_zeta(s, a / q, return_error=True)
    scale = q ** (-s)
    total = scale * np.sum(chi[a - 1] * vals)
    roundoff = 4e-16 * abs(scale) * float(np.sum(np.abs(vals)))
    return complex(total), float(abs(scale) * np.sum(errs) + roundoff)


def _direct_L(s: complex, D: int, terms: int) -> tuple[complex, float]:
    sigma = s.real
    if sigma <= 1:
        raise ValueError("the direct Dirichlet series needs Re s > 1")
    k = np.arange(1, terms + 1)
    chi = arith.kronecker_table(D, terms)[1:] if abs(D) > 1 else np.ones(terms)
    value = np.sum(chi * k ** (-s))
    tail = terms ** (1 - sigma) / (sigma - 1)
    return complex(value), float(tail)


def _smoothed_L(s: float, D: int, tol: float = 1e-17) -> tuple[complex, float]:
    """Incomplete-Gamma approximate functional equation, real 0 < s < 1."""
    q = abs(D)
    kappa = 0 if D > 0 else 1
    a = (s + kappa) / 2
    a_dual = (1 - s + kappa) / 2
    # Q(a, x) < tol once x is past ~ -log(tol) + a log x.
    x_max = -math.log(tol) + 2
    n_max = int(math.sqrt(x_max * q / math.pi)) + 2
    n = np.arange(1, n_max + 1)
    chi = arith.kronecker_table(D, n_max)[1:]
    x = math.pi * n * n / q
    first = np.sum(chi * n ** (-s) * sp.gammaincc(a, x))
    if s == 0.5:
        # self-dual point: the two halves coincide
        return complex(2 * first), 2 * float(sp.gammaincc(a, x[-1]))
    ratio = math.exp(
        (a_dual - a) * math.log(q / math.pi) + sp.gammaln(a_dual) - sp.gammaln(a)
    )
    second = ratio * np.sum(chi * n ** (s - 1) * sp.gammaincc(a_dual, x))
    tail = (1 + ratio) * float(sp.gammaincc(min(a, a_dual), x[-1]))
    return complex(first + second), tail


def dirichlet_L(s: complex, D: int, method: str = "auto", terms: int = 10**5) -> LValue:
    """L(s, chi_D) for a fundamental discriminant D (D = 1 gives zeta).

    ``method`` is one of "hurwitz", "smoothed", "direct-series" or "auto".
    The automatic choice is the smoothed functional-equation sum for real
    0 < s < 1 and D != 1 and the Hurwitz representation otherwise.
    """
    _check_discriminant(D)
    s = complex(s)
    if D == 1 and abs(s - 1) < 1e-14:
        raise ZeroDivisionError("zeta has a pole at s = 1")
    if method == "auto":
        real_strip = s.imag == 0 and 0 < s.real < 1
        method = "smoothed" if real_strip and D != 1 else "hurwitz"
    if method == "hurwitz":
        value, err = _hurwitz_L(s, D)
    elif method == "smoothed":
        if s.imag != 0 or not 0 < s.real < 1 or D == 1:
            raise ValueError("smoothed evaluation needs real 0 < s < 1 and D != 1")
        value, err = _smoothed_L(s.real, D)
    elif method == "direct-series":
        value, err = _direct_L(s, D, terms)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LValue(s, D, value, method, err)


# ---------------------------------------------------------------------------
# Zagier L-series


def T_l(s: complex, l: int, D: int) -> complex:
    """sum over l1 l2 = l of chi_D(l1) mu(l1) l1^{-1/2} tau_{s-1/2}(l2)."""
    total = 0j
    for l1 in arith.divisors(l):
        mu = arith.mobius(l1)
        if mu == 0:
            continue
        chi = arith.kronecker(D, l1)
        if chi:
            total += chi * mu / math.sqrt(l1) * arith.tau_nu(s - 0.5, l // l1)
    return total


def euler_product_td(w: complex, l: int, D: int) -> complex:
    """Euler-product form of l^{1/2-w} T_l(w) at the primes dividing l."""
    out = 1 + 0j
    for p, nu in (arith.factorize(l) if l > 1 else ()):
        x = p ** (1 - 2 * w)
        chi = arith.kronecker(D, p)
        out *= _geom(x, nu + 1) - chi * p ** (-w) * _geom(x, nu)
    return out


def _geom(x: complex, k: int) -> complex:
    """(1 - x^k)/(1 - x), with the removable singularity at x = 1."""
    if abs(1 - x) < 1e-9:
        return sum(x**j for j in range(k))
    return (1 - x**k) / (1 - x)


def zagier_L(s: complex, n: int, series_terms: int | None = None) -> LValue:
    """Zagier L-series via n = D l^2: l^{1/2-s} T_l(s) L(s, chi_D).

    For Re s >= 2 the truncated Dirichlet series sum lambda_q(n) q^{-s} is
    evaluated too and attached as ``cross_check``.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    s = complex(s)
    if n % 4 in (2, 3):
        return LValue(s, n, 0j, "factored", 0.0)
    D, l = arith.fundamental_decompose(n)
    L = dirichlet_L(s, D)
    factor = l ** (0.5 - s) * T_l(s, l, D)
    value = factor * L.value
    check = None
    if s.real >= 2:
        check = zagier_L_series(s, n, series_terms or 10**5)
    return LValue(s, n, value, "factored", abs(factor) * L.truncation_error, check)


@lru_cache(maxsize=None)
def zagier_L_half(n: int) -> float:
    """Cached real value of the Zagier L-series at s = 1/2."""
    if n % 4 in (2, 3):
        return 0.0
    D, l = arith.fundamental_decompose(n)
    return (T_l(0.5, l, D) * _central_L(D)).real


@lru_cache(maxsize=None)
def _central_L(D: int) -> float:
    if D == 1:
        return dirichlet_L(0.5, 1).value.real
    return _smoothed_L(0.5, D)[0].real


def zagier_L_half_array(ns) -> np.ndarray:
    return np.array([zagier_L_half(int(n)) for n in ns])


# series route -----------------------------------------------------------


@lru_cache(maxsize=4)
def _prime_power_split(Q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """For q <= Q: spf p, exponent e of p in q, and q / p^e."""
    spf = arith.smallest_prime_factor(Q)[: Q + 1]
    q = np.arange(Q + 1, dtype=np.int64)
    p = spf.copy()
    p[:2] = 1
    rest = q.copy()
    e = np.zeros(Q + 1, dtype=np.int64)
    active = p > 1
    while np.any(active):
        idx = np.nonzero(active)[0]
        divisible = rest[idx] % p[idx] == 0
        idx = idx[divisible]
        rest[idx] //= p[idx]
        e[idx] += 1
        active = np.zeros_like(active)
        active[idx] = True
    rest[:2] = 1
    return p, e, rest, spf


def _multiplicative_table(n: int, Q: int, good, bad) -> np.ndarray:
    """f(q) for q = 0..Q from prime-power values.

    ``good(chi_p, e)`` gives f(p^e) for odd p not dividing n, in terms of the
    Legendre symbol (n/p); ``bad(p, e)`` gives it for p dividing 2n.
    """
    p, e, rest, _ = _prime_power_split(Q)
    primes = arith.primes_up_to(Q)
    chi = np.zeros(Q + 1)
    odd = primes[primes > 2]
    chi[odd] = arith.legendre_table(n, odd)
    local = np.ones(Q + 1)
    has = p > 1
    local[has] = good(chi[p[has]], e[has])
    for pp, _ in arith.factorize(2 * n):
        mask = p == pp
        for ee in np.unique(e[mask]):
            local[mask & (e == ee)] = bad(pp, int(ee))
    table = np.zeros(Q + 1)
    table[1] = 1.0
    # each pass fixes the values with one more distinct prime factor
    for _ in range(8):
        table = local * table[rest]
        table[1] = 1.0
        table[0] = 0.0
    return table


def lambda_table(n: int, Q: int) -> np.ndarray:
    """lambda_q(n) for q = 0..Q (index 0 unused), via multiplicativity in q."""
    if n % 4 in (2, 3):
        return np.zeros(Q + 1)
    return _multiplicative_table(
        n, Q, lambda chi, e: chi**e, lambda p, e: arith.lambda_prime_power(p, e, n)
    )


def rho_table(n: int, Q: int) -> np.ndarray:
    """rho_q(n) for q = 0..Q."""
    if n % 4 in (2, 3):
        return np.zeros(Q + 1)

    def bad(p, e):
        if p == 2:
            return arith.sqrt_count_prime_power(2, e + 2, n) // 2
        return arith.sqrt_count_prime_power(p, e, n)

    return _multiplicative_table(n, Q, lambda chi, e: 1 + chi, bad)


def _lambda_envelope(n: int) -> float:
    """C with |lambda_q(n)| <= C d(q) for all q."""
    C = 1.0
    for p, _ in arith.factorize(2 * n):
        v = arith.valuation(n, p)
        C *= max(
            max(abs(arith.lambda_prime_power(p, e, n)) / (e + 1) for e in range(v + 6)),
            1.0,
        )
    return C


def _divisor_tail(Q: int, sigma: float) -> float:
    """Approximate sum_{q > Q} d(q) q^{-sigma} for sigma > 1."""
    s1 = sigma - 1
    return Q ** (-s1) * ((math.log(Q) + 2 * EULER_GAMMA) / s1 + 1 / s1**2)


def zagier_L_series(s: complex, n: int, Q: int = 10**5) -> LValue:
    """Truncated Dirichlet series sum_{q <= Q} lambda_q(n) q^{-s}, Re s > 1."""
    s = complex(s)
    if s.real <= 1:
        raise ValueError("the Zagier series converges absolutely only for Re s > 1")
    if n % 4 in (2, 3):
        return LValue(s, n, 0j, "direct-series", 0.0)
    lam = lambda_table(n, Q)
    q = np.arange(1, Q + 1, dtype=float)
    value = complex(np.sum(lam[1:] * q ** (-s)))
    err = _lambda_envelope(n) * _divisor_tail(Q, s.real)
    return LValue(s, n, value, "direct-series", err)


def zagier_L_rho_form(s: complex, n: int, Q: int = 10**5) -> complex:
    """zeta(2s)/zeta(s) sum_{q <= Q} rho_q(n) q^{-s}."""
    s = complex(s)
    if s.real < 2:
        raise ValueError("the rho form is only used for Re s >= 2")
    rho = rho_table(n, Q)
    q = np.arange(1, Q + 1, dtype=float)
    return complex(zeta(2 * s) / zeta(s) * np.sum(rho[1:] * q ** (-s)))


# ---------------------------------------------------------------------------
# q(w, n), L*(w, n) and r_2(s, n)


def q_factor(w: complex, n: int) -> complex:
    """Euler product over odd p | n1 of the finite sums defining q(w, n)."""
    n0, n1 = arith.squarefree_decompose(n)
    out = 1 + 0j
    for p, nu in (arith.factorize(n1) if n1 > 1 else ()):
        if p == 2:
            continue
        chi = arith.jacobi_classical(n0, p)
        for_p = 0j
        for beta in range(nu + 1):
            head = 1 - (chi * p ** (-w) if beta < nu else 0)
            for_p += head * p ** (-2 * beta * (w - 0.5))
        out *= for_p
    return out


def q_factor_closed(w: complex, n: int) -> complex:
    """q(w, n) through the closed geometric-sum form of each local factor."""
    n0, n1 = arith.squarefree_decompose(n)
    out = 1 + 0j
    for p, nu in (arith.factorize(n1) if n1 > 1 else ()):
        if p == 2:
            continue
        x = p ** (1 - 2 * w)
        chi = arith.jacobi_classical(n0, p)
        out *= _geom(x, nu + 1) - chi * p ** (-w) * _geom(x, nu)
    return out


def discriminant_of_kernel(n0: int) -> int:
    """Fundamental discriminant of Q(sqrt(n0)) for squarefree n0."""
    return n0 if n0 % 4 == 1 else 4 * n0


def L_star(w: complex, n: int) -> LValue:
    """q(w, n) L(w, chi_{n0}) with the Euler factor at 2 removed."""
    if n == 0:
        raise ValueError("n must be nonzero")
    w = complex(w)
    n0, _ = arith.squarefree_decompose(n)
    D = discriminant_of_kernel(n0)
    L = dirichlet_L(w, D)
    two = 1 - arith.kronecker(D, 2) * 2 ** (-w)
    qf = q_factor(w, n)
    return LValue(w, n, qf * two * L.value, "factored", abs(qf * two) * L.truncation_error)


R2_BASES = ("printed", "enumerated")


def r2(s: complex, n: int, base: str = "printed") -> R2Factor:
    """The 2-adic factor r_2(s, n), unrolling n = 4^r n4.

    ``base="printed"`` uses the published base cases for n4 = 1 and
    n4 = 2, 3 mod 4.  ``base="enumerated"`` replaces them by the values
    that the c = 4 and c = 8 theta sums actually produce, namely
    2^{-4s} in place of 2^{-2s} and 2^{3/2 - 6s} in place of 2^{1/2 - 6s};
    the recursion in r is the same for both.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if base not in R2_BASES:
        raise ValueError(f"base must be one of {R2_BASES}")
    s = complex(s)
    r = 0
    n4 = n
    while n4 % 4 == 0:
        n4 //= 4
        r += 1
    lead, tail = (2 * s, 6 * s - 0.5) if base == "printed" else (4 * s, 6 * s - 1.5)
    if n4 % 4 == 1:
        start = (1 + 1j) / 2**lead + (1 + 1j) * (-1) ** ((n4 - 1) // 4) / 2**tail
    else:
        start = -(1 + 1j) / 2**lead
    if r == 0:
        return R2Factor(s, n, start)
    x = 2 ** (1 - 2 * s)
    u = sum(x ** (2 * j) for j in range(1, r + 1))
    value = (1 + 1j) / 4 * u + 4 ** (r * (1 - 2 * s)) * start
    return R2Factor(s, n, value)


def r2_by_enumeration(s: complex, n: int) -> complex:
    """sum over k >= 2 of conj(theta0(2^k, n)) 2^{-2ks}; finite since the sums vanish for large k."""
    from . import theta

    s = complex(s)
    k_max = arith.valuation(n, 2) + 4 if n else 40
    total = 0j
    for k in range(2, k_max + 1):
        c = 2**k
        total += theta.theta0_row(c)[n % c].conjugate() * 2 ** (-2 * k * s)
    return total


# ---------------------------------------------------------------------------
# Dirichlet series of the theta sums


@dataclass(frozen=True)
class SeriesIdentityReport:
    which: str
    s: complex
    n: int
    C_max: int
    partial_sum: complex
    closed_form: complex
    residual: float
    tail_estimate: float

    @property
    def holds(self) -> bool:
        return self.residual < 10 * self.tail_estimate


def _theta_partial_sums(which: str, s_values, ns, C_max: int):
    """Partial sums over c <= C_max and an envelope of |theta(c, n)|/sqrt(c) near C_max."""
    from . import theta

    if which == "theta1":
        cs, row_of, density = range(1, C_max + 1, 2), theta.theta1_row, 0.5
    elif which == "theta0":
        cs, row_of, density = range(4, C_max + 1, 4), theta.theta0_row, 0.25
    else:
        raise ValueError(f"unknown identity {which!r}")
    s_arr = np.asarray(s_values, dtype=complex)
    ns = np.asarray(ns, dtype=np.int64)
    sums = np.zeros((len(s_arr), len(ns)), dtype=complex)
    envelope = np.zeros(len(ns))
    for c in cs:
        vals = row_of(c)[ns % c]
        sums += np.exp(-2 * s_arr[:, None] * math.log(c)) * vals[None, :]
        if 2 * c > C_max:
            envelope = np.maximum(envelope, np.abs(vals) / math.sqrt(c))
    row_of.cache_clear()
    sigma = s_arr.real[:, None]
    tails = density * envelope[None, :] * C_max ** (1.5 - 2 * sigma) / (2 * sigma - 1.5)
    return sums, tails


def theta_series_closed_form(which: str, s: complex, n: int, r2_base: str = "printed") -> complex:
    s = complex(s)
    base = L_star(2 * s - 0.5, n).value / complex(zeta2(4 * s - 1))
    if which == "theta1":
        return base
    return base * r2(s.conjugate(), n, r2_base).value.conjugate()


def series_identities(
    which: str, s_values, ns, C_max: int, r2_base: str = "printed"
) -> list[SeriesIdentityReport]:
    """Compare partial Dirichlet series of theta sums with their closed forms."""
    for s in s_values:
        if complex(s).real <= 1:
            raise ValueError("the theta series are only checked for Re s > 1")
    sums, tails = _theta_partial_sums(which, s_values, ns, C_max)
    out = []
    for i, s in enumerate(s_values):
        for j, n in enumerate(ns):
            closed = theta_series_closed_form(which, s, int(n), r2_base)
            partial = complex(sums[i, j])
            out.append(
                SeriesIdentityReport(
                    which, complex(s), int(n), C_max, partial, closed,
                    abs(partial - closed), float(tails[i, j]),
                )
            )
    return out


def series_identity_theta1(s: complex, n: int, C_max: int) -> SeriesIdentityReport:
    return series_identities("theta1", [s], [n], C_max)[0]


def series_identity_theta0(
    s: complex, n: int, C_max: int, r2_base: str = "printed"
) -> SeriesIdentityReport:
    return series_identities("theta0", [s], [n], C_max, r2_base)[0]


# ---------------------------------------------------------------------------
# mean square scan


@dataclass(frozen=True)
class LargeSieveScan:
    t: float
    checkpoints: list[int]
    cumulative: list[float]
    slope: float


def large_sieve_scan(N: int, t: float = 0.0) -> LargeSieveScan:
    """Cumulative sums of |L_n(1/2 + it)|^2 at dyadic checkpoints up to N."""
    if N > 2**16:
        raise ValueError("large_sieve_scan is limited to N <= 2**16")
    s = complex(0.5, t)
    squares = np.zeros(N + 1)
    for n in range(1, N + 1):
        if n % 4 in (2, 3):
            continue
        v = zagier_L_half(n) if t == 0 else zagier_L(s, n).value
        squares[n] = abs(v) ** 2
    cumulative = np.cumsum(squares)
    checkpoints = [2**k for k in range(1, N.bit_length()) if 2**k <= N]
    if checkpoints[-1] != N:
        checkpoints.append(N)
    values = [float(cumulative[c]) for c in checkpoints]
    fit = [c for c in checkpoints if c >= max(16, N // 16)]
    logs = np.log([float(cumulative[c]) for c in fit])
    slope = float(np.polyfit(np.log(fit), logs, 1)[0]) if len(fit) > 1 else float("nan")
    return LargeSieveScan(t, checkpoints, values, slope)


__all__ = [
    "LValue",
    "R2Factor",
    "dirichlet_L",
    "zagier_L",
    "zagier_L_series",
    "zagier_L_half",
    "q_factor",
    "q_factor_closed",
    "L_star",
    "r2",
    "T_l",
    "euler_product_td",
    "lambda_table",
    "large_sieve_scan",
    "zeta",
    "zeta2",
]
