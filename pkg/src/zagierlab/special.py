"""Special functions and quadrature shared by the L-series and transform code.

Bessel functions and log-Gamma are taken from ``scipy.special``; the
Hurwitz zeta function and the Gauss hypergeometric series are evaluated
here because they need complex arguments and explicit error reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special as sp

EULER_GAMMA = 0.57721566490153286061
GAMMA_1_4 = 3.6256099082219083119
GAMMA_3_4 = 1.2254167024651776451

_BERNOULLI = sp.bernoulli(28)


class ConvergenceError(ArithmeticError):
    """Raised when a series or quadrature cannot meet its tolerance."""


# ---------------------------------------------------------------------------
# zeta functions


def hurwitz_zeta(s, x, terms: int = 12, return_error: bool = False):
    """Hurwitz zeta(s, x) by Euler-Maclaurin summation.

    ``s`` and ``x`` broadcast against each other; ``x > 0``.  The number of
    directly summed terms is ``10 + |s|`` and ``terms`` Bernoulli corrections
    are applied.  With ``return_error`` the size of the first omitted
    correction is returned as well.
    """
    s = np.asarray(s, dtype=complex)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(s - 1) < 1e-14):
        raise ZeroDivisionError("Hurwitz zeta has a pole at s = 1")
    if np.any(x <= 0):
        raise ValueError("Hurwitz zeta needs x > 0")
    s, x = np.broadcast_arrays(s, x)
    N = int(math.ceil(10 + np.max(np.abs(s), initial=0.0)))
    k = np.arange(N, dtype=float)
    direct = np.sum((x[..., None] + k) ** (-s[..., None]), axis=-1)
    xn = x + N
    total = direct + xn ** (1 - s) / (s - 1) + 0.5 * xn ** (-s)
    poch = s.copy()  # rising factorial (s)_{2j-1}
    fact = 2.0  # (2j)!
    corr_term = np.zeros_like(total)
    for j in range(1, terms + 2):
        corr_term = _BERNOULLI[2 * j] / fact * poch * xn ** (-s - 2 * j + 1)
        if j <= terms:
            total = total + corr_term
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    if return_error:
        return total, np.abs(corr_term)
    return total


def zeta(s):
    """Riemann zeta for complex s != 1."""
    return hurwitz_zeta(s, 1.0)


def zeta2(s):
    """zeta(s) with its Euler factor at 2 removed."""
    s = np.asarray(s, dtype=complex)
    return zeta(s) * (1 - 2.0 ** (-s))


def loggamma(z):
    return sp.loggamma(np.asarray(z, dtype=complex))


_LANCZOS_G = 671 / 128
_LANCZOS = (
    0.999999999999997092,
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)


def lanczos_loggamma(z):
    """log Gamma(z) for Re z > 0 from a 15-term Lanczos sum (g = 671/128).

    The imaginary part can differ from the principal branch by a multiple
    of 2 pi, which is harmless once exponentiated.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.real <= 0):
        raise ValueError("lanczos_loggamma needs Re z > 0")
    series = np.full(z.shape, _LANCZOS[0], dtype=complex)
    for k, coeff in enumerate(_LANCZOS[1:], start=1):
        series = series + coeff / (z + k)
    t = z + _LANCZOS_G
    return (z + 0.5) * np.log(t) - t + np.log(2.5066282746310005 * series / z)


def gamma(z):
    return sp.gamma(z)


# ---------------------------------------------------------------------------
# Bessel functions


def bessel(kind: str, x, nu: float = 0.0):
    """J0, Y0, K0, Jnu or Ynu at x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Bessel functions are evaluated for x > 0 only")
    if kind == "J0":
        return sp.j0(x)
    if kind == "Y0":
        return sp.y0(x)
    if kind == "K0":
        return sp.k0(x)
    if kind == "Jnu":
        return sp.jv(nu, x)
    if kind == "Ynu":
        return sp.yv(nu, x)
    raise ValueError(f"unknown Bessel kind {kind!r}")


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


def _gauss_series(a, b, c, z, tol=1e-16, max_terms=20000):
    term = 1.0 + 0j
    total = 1.0 + 0j
    biggest = 1.0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) < tol * abs(total) and k > 4:
            break
    else:
        raise ConvergenceError("Gauss series did not converge")
    return total, biggest


def hyp2f1(a: complex, b: complex, c: complex, z: float, max_loss: float = 1e6) -> complex:
    """Gauss 2F1(a, b; c; z) for real 0 <= z <= 0.98.

    Uses the power series, switching to the 1 - z linear transformation for
    z > 0.75 when c - a - b is not an integer.  Raises ConvergenceError when
    cancellation in the series would cost more than ``log10(max_loss)``
    digits.
    """
    if not 0 <= z <= 0.98:
        raise ConvergenceError(f"z = {z} outside the supported interval [0, 0.98]")
    if z == 0:
        return 1.0 + 0j
    s = c - a - b
    near_integer = abs(s - round(complex(s).real)) < 1e-12
    if z > 0.75 and not near_integer:
        w = 1 - z
        f1, m1 = _gauss_series(a, b, a + b - c + 1, w)
        f2, m2 = _gauss_series(c - a, c - b, s + 1, w)

        def g(v):
            return sp.loggamma(complex(v))

        t1 = np.exp(g(c) + g(s) - g(c - a) - g(c - b))
        t2 = np.exp(g(c) + g(-s) - g(a) - g(b)) * w**s
        value = t1 * f1 + t2 * f2
        biggest = max(abs(t1) * m1, abs(t2) * m2)
    else:
        value, biggest = _gauss_series(a, b, c, z)
    if biggest > max_loss * max(abs(value), 1e-300):
        raise ConvergenceError(
            f"2F1 series loses {math.log10(biggest / abs(value)):.1f} digits to cancellation"
        )
    return complex(value)


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureReport:
    value: complex
    error: float
    nodes: int


@dataclass(frozen=True)
class _Rule:
    x: np.ndarray
    w: np.ndarray


_RULES: dict[int, _Rule] = {}


def _rule(order: int) -> _Rule:
    if order not in _RULES:
        x, w = np.polynomial.legendre.leggauss(order)
        _RULES[order] = _Rule(x, w)
    return _RULES[order]


def panel_nodes(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on consecutive panels."""
    r = _rule(order)
    edges = np.asarray(edges, dtype=float)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * r.x[None, :]).ravel()
    w = (half[:, None] * r.w[None, :]).ravel()
    return x, w


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    edges: np.ndarray,
    order: int = 24,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Integrate ``f`` over panels with two Gauss rules; returns value, error, nodes.

    ``f`` maps an array of nodes of shape (k,) to values of shape (..., k).
    """
    x1, w1 = panel_nodes(edges, order)
    x2, w2 = panel_nodes(edges, order + order // 2)
    v1 = f(x1) @ w1
    v2 = f(x2) @ w2
    return v2, np.abs(v2 - v1), len(x1) + len(x2)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    panels: int = 8,
    order: int = 24,
    max_panels: int = 1 << 16,
) -> QuadratureReport:
    """Panel Gauss-Legendre integration of a smooth scalar integrand with doubling."""
    while True:
        edges = np.linspace(a, b, panels + 1)
        value, err, nodes = integrate_panels(f, edges, order)
        if err <= tol or panels >= max_panels:
            break
        panels *= 2
    if err > tol:
        raise ConvergenceError(f"quadrature error {err:.3g} above tolerance {tol:.3g}")
    return QuadratureReport(complex(value), float(err), nodes)
