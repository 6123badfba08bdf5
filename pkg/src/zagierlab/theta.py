"""Exponential sums weighted by the theta multiplier.

Scalar evaluators enumerate the reduced residues in ascending order and
add the terms with ``math.fsum``.  The ``*_row`` functions return a whole
period in n at once through an FFT and are what the Dirichlet-series
checks use.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import arith

KINDS = ("theta0", "theta1", "theta4", "theta5")


@dataclass(frozen=True)
class ThetaSumValue:
    kind: str
    c: int
    n: int
    value: complex

    def csv_row(self) -> tuple:
        return (self.kind, self.c, self.n, self.value.real, self.value.imag)


def theta_multiplier(c: int, d: int) -> complex:
    """conj(eps_d) (c/d) for odd d."""
    return arith.epsilon_d(d).conjugate() * arith.symbol_shimura(c, d)


def _e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def _fsum_complex(terms: list[complex]) -> complex:
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _units(c: int) -> list[int]:
    return [a for a in range(c) if math.gcd(a, c) == 1]


def _inverse(a: int, m: int) -> int:
    return pow(a, -1, m) if m > 1 else 0


# ---------------------------------------------------------------------------
# scalar sums


def theta0(c: int, n: int) -> ThetaSumValue:
    """sum over a mod c, (a, c) = 1, of conj(eps_d) (c/d) e(-dn/c), d = a^{-1} mod c."""
    if c <= 0 or c % 4:
        raise ValueError(f"theta0 needs c = 0 mod 4, got {c}")
    terms = []
    for a in _units(c):
        d = _inverse(a, c)
        terms.append(theta_multiplier(c, d) * _e(-d * n % c / c))
    return ThetaSumValue("theta0", c, n, _fsum_complex(terms))


def theta1(c: int, n: int) -> ThetaSumValue:
    """conj(eps_c) sum over a mod c of (a/c) e(an/c), c odd.

    The form with 4ad = -1 mod c is evaluated as well and must agree.
    """
    if c <= 0 or c % 2 == 0:
        raise ValueError(f"theta1 needs odd positive c, got {c}")
    value = theta1_aform(c, n)
    dual = theta1_dform(c, n)
    if abs(value - dual) > 1e-9 * max(1.0, c):
        raise ArithmeticError(f"theta1 forms disagree at c={c}, n={n}")
    return ThetaSumValue("theta1", c, n, value)


def theta1_aform(c: int, n: int) -> complex:
    eps = arith.epsilon_d(c).conjugate()
    if c == 1:
        return eps
    terms = [arith.jacobi_classical(a, c) * _e(a * n % c / c) for a in _units(c)]
    return eps * _fsum_complex(terms)


def theta1_dform(c: int, n: int) -> complex:
    eps = arith.epsilon_d(c).conjugate()
    if c == 1:
        return eps
    terms = []
    for a in _units(c):
        d = -_inverse(4 * a, c) % c
        terms.append(arith.jacobi_classical(4 * d, c) * _e(d * n % c / c))
    return eps * _fsum_complex(terms)


def _half_modulus(c: int, name: str) -> int:
    if c <= 0 or c % 4 != 2:
        raise ValueError(f"{name} needs c = 2 mod 4, got {c}")
    return c // 2


def theta4(c: int, n: int) -> ThetaSumValue:
    """eps_{c1} sum over a mod c of (8a/c1) e(d4 n/c1) with 8 a d4 = -1 mod c1."""
    c1 = _half_modulus(c, "theta4")
    eps = arith.epsilon_d(c1)
    terms = []
    for a in _units(c):
        d4 = -_inverse(8 * a, c1) % c1 if c1 > 1 else 0
        sym = arith.jacobi_classical(8 * a, c1)
        terms.append(sym * _e(d4 * n % c1 / c1))
    return ThetaSumValue("theta4", c, n, eps * _fsum_complex(terms))


def theta5(c: int, n: int) -> ThetaSumValue:
    """conj(eps_{c1}) sum over a mod c of (4 d5/c1) e(d5 n/c1) with 2 a d5 = -1 mod c1."""
    c1 = _half_modulus(c, "theta5")
    eps = arith.epsilon_d(c1).conjugate()
    terms = []
    for a in _units(c):
        d5 = -_inverse(2 * a, c1) % c1 if c1 > 1 else 0
        sym = arith.jacobi_classical(4 * d5, c1)
        terms.append(sym * _e(d5 * n % c1 / c1))
    return ThetaSumValue("theta5", c, n, eps * _fsum_complex(terms))


def theta(kind: str, c: int, n: int) -> ThetaSumValue:
    funcs = {"theta0": theta0, "theta1": theta1, "theta4": theta4, "theta5": theta5}
    if kind not in funcs:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return funcs[kind](c, n)


# ---------------------------------------------------------------------------
# vectorized rows over a full period of n


def jacobi_row(m: int) -> np.ndarray:
    """(a/m) for a = 0..m-1, m odd positive."""
    if m <= 0 or m % 2 == 0:
        raise ValueError("jacobi_row needs odd positive m")
    a = np.arange(m, dtype=np.int64)
    out = np.ones(m, dtype=np.int64)
    for p, e in (arith.factorize(m) if m > 1 else ()):
        r = arith._powmod(a % p, np.full(m, (p - 1) // 2, dtype=np.int64), np.full(m, p, dtype=np.int64))
        leg = np.where(r == 0, 0, np.where(r == 1, 1, -1))
        out *= leg**e
    return out


def symbol_column(m: int, d: np.ndarray) -> np.ndarray:
    """(m/d) for m > 0 and an array of odd positive d, by reciprocity."""
    d = np.asarray(d, dtype=np.int64)
    k = arith.valuation(m, 2)
    odd = m >> k
    out = np.ones(d.shape, dtype=np.int64)
    if k % 2:
        out *= np.where((d % 8 == 1) | (d % 8 == 7), 1, -1)
    if odd > 1:
        out *= jacobi_row(odd)[d % odd]
        if odd % 4 == 3:
            out *= np.where(d % 4 == 3, -1, 1)
    return out


@lru_cache(maxsize=64)
def theta0_row(c: int) -> np.ndarray:
    """theta0(c, n) for n = 0..c-1."""
    if c <= 0 or c % 4:
        raise ValueError(f"theta0 needs c = 0 mod 4, got {c}")
    d = np.arange(c, dtype=np.int64)
    unit = np.gcd(d, c) == 1
    w = np.zeros(c, dtype=complex)
    du = d[unit]
    eps_bar = np.where(du % 4 == 1, 1.0 + 0j, -1j)
    w[unit] = eps_bar * symbol_column(c, du)
    return np.fft.fft(w)


@lru_cache(maxsize=64)
def theta1_row(c: int) -> np.ndarray:
    """theta1(c, n) for n = 0..c-1."""
    if c <= 0 or c % 2 == 0:
        raise ValueError(f"theta1 needs odd positive c, got {c}")
    eps_bar = 1.0 if c % 4 == 1 else -1j
    if c == 1:
        return np.array([eps_bar], dtype=complex)
    return eps_bar * c * np.fft.ifft(jacobi_row(c).astype(complex))


def theta_grid(kind: str, c_values, n_values) -> list[ThetaSumValue]:
    """Grid of values; rows come from the FFT path, kinds 4 and 5 via c/2."""
    out = []
    for c in c_values:
        if kind == "theta0":
            row = theta0_row(c)
            period = c
        elif kind == "theta1":
            row = theta1_row(c)
            period = c
        elif kind in ("theta4", "theta5"):
            _half_modulus(c, kind)
            row = theta1_row(c // 2)
            period = c // 2
        else:
            raise ValueError(f"unknown kind {kind!r}")
        for n in n_values:
            out.append(ThetaSumValue(kind, c, n, complex(row[n % period])))
    return out
