"""Exact integer arithmetic: quadratic symbols, square-root counts, discriminants.

Everything here works on Python integers.  Arguments are bounded by
``MAX_ARG`` so that the enumeration-based counters stay exact and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ARG = 2**40


def _check_bound(*values: int) -> None:
    for v in values:
        if abs(v) > MAX_ARG:
            raise ValueError(f"argument {v} exceeds supported bound 2**40")


# ---------------------------------------------------------------------------
# factorization helpers


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as ((p, e), ...) in increasing p."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    _check_bound(n)
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n))


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


# ---------------------------------------------------------------------------
# quadratic symbols


def jacobi_classical(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive m."""
    if m <= 0 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive modulus, got {m}")
    _check_bound(a, m)
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    _check_bound(a, n)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi_classical(a, n)


def symbol_shimura(c: int, d: int) -> int:
    """The extended symbol (c/d) of the theta multiplier, for odd d.

    For d > 0 this is the Jacobi symbol.  For d < 0 the value is (c/|d|),
    negated when c < 0 as well.  (0/d) is 1 for d = +-1 and 0 otherwise.
    """
    if d % 2 == 0:
        raise ValueError(f"symbol needs odd d, got {d}")
    _check_bound(c, d)
    if c == 0:
        return 1 if abs(d) == 1 else 0
    value = jacobi_classical(c, abs(d))
    if d < 0 and c < 0:
        value = -value
    return value


def epsilon_d(d: int) -> complex:
    if d % 2 == 0:
        raise ValueError(f"epsilon_d needs odd d, got {d}")
    return 1 + 0j if d % 4 == 1 else 1j


# ---------------------------------------------------------------------------
# square-root counts rho_q and lambda_q


def rho_q(q: int, n: int) -> int:
    """#{x mod 2q : x^2 = n mod 4q} by direct enumeration."""
    if q < 1:
        raise ValueError("q must be positive")
    _check_bound(q, n)
    m = 4 * q
    r = n % m
    return sum(1 for x in range(2 * q) if (x * x - r) % m == 0)


def sqrt_count_prime_power(p: int, k: int, n: int) -> int:
    """#{x mod p^k : x^2 = n mod p^k} via Hensel lifting counts."""
    if k == 0:
        return 1
    pk = p**k
    r = n % pk
    if r == 0:
        return p ** (k // 2)
    v = valuation(r, p)
    if v % 2:
        return 0
    u = r // p**v
    j = k - v
    if p == 2:
        if j == 1:
            base = 1
        elif j == 2:
            base = 2 if u % 4 == 1 else 0
        else:
            base = 4 if u % 8 == 1 else 0
    else:
        base = 1 + jacobi_classical(u, p)
    return base * 2 ** (v // 2) if p == 2 else base * p ** (v // 2)


def rho_q_fast(q: int, n: int) -> int:
    """rho_q(n) from local counts: rho_q = N_{4q}(n)/2 with N multiplicative."""
    if q < 1:
        raise ValueError("q must be positive")
    count = 1
    v2 = 0
    for p, e in (factorize(q) if q > 1 else ()):
        if p == 2:
            v2 = e
        else:
            count *= sqrt_count_prime_power(p, e, n)
    count *= sqrt_count_prime_power(2, v2 + 2, n)
    return count // 2


def lambda_q(q: int, n: int) -> int:
    """sum over q1^2 q2 q3 = q of mu(q2) rho_{q3}(n), by enumeration."""
    if q < 1:
        raise ValueError("q must be positive")
    total = 0
    for q1 in range(1, math.isqrt(q) + 1):
        if q % (q1 * q1):
            continue
        rest = q // (q1 * q1)
        for q2 in divisors(rest):
            mu = mobius(q2)
            if mu:
                total += mu * rho_q(rest // q2, n)
    return total


def lambda_prime_power(p: int, e: int, n: int) -> int:
    """Local factor lambda_{p^e}(n); only meaningful when n = 0, 1 mod 4."""

    def rho_local(j: int) -> int:
        if p == 2:
            return sqrt_count_prime_power(2, j + 2, n) // 2
        return sqrt_count_prime_power(p, j, n)

    total = 0
    for a in range(e // 2 + 1):
        j = e - 2 * a
        total += rho_local(j)
        if j >= 1:
            total -= rho_local(j - 1)
    return total


def lambda_q_fast(q: int, n: int) -> int:
    """lambda_q(n) through multiplicativity in q (n = 0, 1 mod 4)."""
    if n % 4 in (2, 3):
        return 0
    out = 1
    for p, e in (factorize(q) if q > 1 else ()):
        out *= lambda_prime_power(p, e, n)
    return out


# ---------------------------------------------------------------------------
# discriminant decompositions


@dataclass(frozen=True)
class DiscriminantDecomposition:
    n: int
    D: int
    l: int
    n0: int
    n1: int


def squarefree_decompose(n: int) -> tuple[int, int]:
    """n = n0 * n1^2 with n0 squarefree (sign carried by n0)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    n0, n1 = (1 if n > 0 else -1), 1
    for p, e in factorize(n):
        n1 *= p ** (e // 2)
        if e % 2:
            n0 *= p
    return n0, n1


def fundamental_decompose(n: int) -> tuple[int, int]:
    """n = D * l^2 with D a fundamental discriminant (n = 0, 1 mod 4)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    if n % 4 in (2, 3):
        raise ValueError(f"{n} = {n % 4} mod 4 has no fundamental discriminant part")
    n0, n1 = squarefree_decompose(n)
    if n0 % 4 == 1:
        return n0, n1
    return 4 * n0, n1 // 2


def decompose(n: int) -> DiscriminantDecomposition:
    _check_bound(n)
    D, l = fundamental_decompose(n)
    n0, n1 = squarefree_decompose(n)
    return DiscriminantDecomposition(n=n, D=D, l=l, n0=n0, n1=n1)


def is_fundamental(D: int) -> bool:
    if D == 1:
        return True
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def tau_nu(nu: complex, n: int) -> complex:
    """Symmetric divisor sum sum_{ab=n} (a/b)^nu."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum((d / (n // d)) ** nu for d in divisors(n))


# ---------------------------------------------------------------------------
# vectorized tables


def smallest_prime_factor(limit: int) -> np.ndarray:
    """Smallest-prime-factor sieve covering at least 0..limit."""
    size = 1 << max(4, int(limit).bit_length())
    return _spf_sieve(size)


@lru_cache(maxsize=4)
def _spf_sieve(size: int) -> np.ndarray:
    spf = np.zeros(size + 1, dtype=np.int64)
    for p in range(2, math.isqrt(size) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    idx = np.arange(size + 1, dtype=np.int64)
    spf[spf == 0] = idx[spf == 0]
    spf[0] = 0
    return spf


def primes_up_to(limit: int) -> np.ndarray:
    spf = smallest_prime_factor(max(limit, 2))[: limit + 1]
    idx = np.arange(len(spf))
    return idx[(spf == idx) & (idx >= 2)]


def _powmod(base: np.ndarray, exp: np.ndarray, mod: np.ndarray) -> np.ndarray:
    result = np.ones_like(base)
    base = base % mod
    exp = exp.copy()
    while np.any(exp > 0):
        odd = (exp & 1) == 1
        result = np.where(odd, (result * base) % mod, result)
        base = (base * base) % mod
        exp >>= 1
    return result


def legendre_table(n: int, primes: np.ndarray) -> np.ndarray:
    """(n/p) for each odd prime p in ``primes`` (Euler's criterion)."""
    p = primes.astype(np.int64)
    r = _powmod(np.full_like(p, n) % p, (p - 1) // 2, p)
    return np.where(r == 0, 0, np.where(r == 1, 1, -1))


def kronecker_table(D: int, limit: int) -> np.ndarray:
    """chi_D(k) = (D/k) for k = 0..limit, via complete multiplicativity."""
    spf = smallest_prime_factor(max(limit, 2))
    chip = np.zeros(len(spf), dtype=np.int64)
    primes = primes_up_to(max(limit, 2))
    odd = primes[primes > 2]
    chip[odd] = legendre_table(D, odd)
    chip[2] = kronecker(D, 2)
    chi = np.ones(limit + 1, dtype=np.int64)
    chi[0] = kronecker(D, 0)
    m = np.arange(limit + 1, dtype=np.int64)
    active = m > 1
    while np.any(active):
        p = spf[m[active]]
        chi[active] *= chip[p]
        m[active] //= p
        active = m > 1
    return chi
