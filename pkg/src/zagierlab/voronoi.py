"""Voronoi summation for the coefficients a_n built from Zagier L-values.

Two forms of each identity are available.  ``form="printed"`` uses the
kernel Phi^{++}(x) = -(x/2)^{1/2} (Y0 + J0)(2 sqrt x) and the main term

    R(x) = (gamma - log 4 pi + 1/2) phi^+(1/2) pi^{1/2} x^{-1} / Gamma(3/4).

``form="derived"`` uses Y0 - J0 in the kernel and the main term

    M(x) = pi^{1/2} x^{-1} / Gamma(3/4) * int phi(u) u^{-1/2} (log(u/x^2)/2 + kappa) du,
    kappa = 3 gamma/2 + log(2/pi)/2 - pi/4,

which is what the coefficients actually satisfy (see ``tests/test_voronoi.py``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import special as sp

from . import arith
from .lseries import zagier_L_half
from .special import EULER_GAMMA, GAMMA_1_4, GAMMA_3_4, ConvergenceError, QuadratureReport, bessel, panel_nodes

FORMS = ("printed", "derived")
KAPPA = 1.5 * EULER_GAMMA + 0.5 * math.log(2 / math.pi) - math.pi / 4


# ---------------------------------------------------------------------------
# test functions


@lru_cache(maxsize=None)
def _bump_poly(k: int) -> np.ndarray:
    """P_k with d^k/dt^k exp(-1/(1-t^2)) = P_k(t) (1-t^2)^{-2k} exp(-1/(1-t^2))."""
    if k == 0:
        return np.array([1.0])
    prev = _bump_poly(k - 1)
    one_minus = np.array([1.0, 0.0, -1.0])
    t = np.array([0.0, 1.0])
    j = k - 1
    out = P.polymul(P.polyder(prev), P.polymul(one_minus, one_minus)) if len(prev) > 1 else np.zeros(1)
    out = P.polyadd(out, 4 * j * P.polymul(P.polymul(t, one_minus), prev))
    out = P.polyadd(out, -2 * P.polymul(t, prev))
    return out


@dataclass(frozen=True)
class TestFunction:
    """A smooth function compactly supported in [lo, hi] inside (0, inf).

    ``pieces`` is a tuple of (weight, kind, a, b) terms; kind "bump" is the
    standard bump on [a, b] and "logbump" is x^{-1/2} times a bump in
    log x on [log a, log b].
    """

    __test__ = False

    pieces: tuple[tuple[float, str, float, float], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def support(self) -> tuple[float, float]:
        return min(p[2] for p in self.pieces), max(p[3] for p in self.pieces)

    def __call__(self, x) -> np.ndarray:
        return self.derivative(x, 0)

    def derivative(self, x, k: int = 0) -> np.ndarray:
        if not 0 <= k <= 8:
            raise ValueError("derivatives are available up to order 8")
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for w, kind, a, b in self.pieces:
            if kind == "bump":
                out += w * _bump_derivative(x, a, b, k)
            elif k == 0:
                v = np.log(np.where(x > 0, x, 1.0))
                out += w * np.where(x > 0, x, 1.0) ** -0.5 * _bump_derivative(v, math.log(a), math.log(b), 0)
            else:
                raise NotImplementedError("derivatives of log-scale bumps are not implemented")
        return out

    def __add__(self, other: "TestFunction") -> "TestFunction":
        return TestFunction(self.pieces + other.pieces)

    def __rmul__(self, alpha: float) -> "TestFunction":
        return TestFunction(tuple((alpha * w, kind, a, b) for w, kind, a, b in self.pieces))

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        return self + (-1.0) * other

    def mellin(self, s: complex, log_power: int = 0, panels: int = 400) -> complex:
        """int phi(x) x^{s-1} (log x)^log_power dx."""
        key = (complex(s), log_power, panels)
        if key not in self._cache:
            total = 0j
            for w, kind, a, b in self.pieces:
                x, wt = panel_nodes(np.linspace(a, b, panels + 1), 24)
                f = TestFunction(((w, kind, a, b),))(x)
                total += np.sum(wt * f * x ** (s - 1) * np.log(x) ** log_power)
            self._cache[key] = complex(total)
        return self._cache[key]


def _bump_derivative(x: np.ndarray, a: float, b: float, k: int) -> np.ndarray:
    scale = 2.0 / (b - a)
    t = (2 * x - (a + b)) / (b - a)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    ti = t[inside]
    q = 1 - ti * ti
    out[inside] = P.polyval(ti, _bump_poly(k)) * q ** (-2 * k) * np.exp(-1 / q) * scale**k
    return out


def bump(lo: float, hi: float) -> TestFunction:
    if not 0 < lo < hi:
        raise ValueError("bump support must satisfy 0 < lo < hi")
    return TestFunction(((1.0, "bump", float(lo), float(hi)),))


def log_odd_bump(lo: float, hi: float) -> TestFunction:
    """x^{-1/2} psi(log x) with psi odd about the log-midpoint; its Mellin transform vanishes at 1/2."""
    mid = math.sqrt(lo * hi)
    return TestFunction(((1.0, "logbump", lo, mid), (-1.0, "logbump", mid, hi)))


# ---------------------------------------------------------------------------
# kernels and transforms


def kernel_pp(x, form: str = "printed"):
    """Phi^{++}(x) = -(x/2)^{1/2} (Y0 +- J0)(2 sqrt x)."""
    x = np.asarray(x, dtype=float)
    z = 2 * np.sqrt(x)
    sign = 1.0 if form == "printed" else -1.0
    return -np.sqrt(x / 2) * (bessel("Y0", z) + sign * bessel("J0", z))


def kernel_mp(x):
    """Phi^{-+}(x) = 2 sqrt(x) K0(2 sqrt x) / Gamma(3/4)^2."""
    x = np.asarray(x, dtype=float)
    return 2 * np.sqrt(x) * bessel("K0", 2 * np.sqrt(x)) / GAMMA_3_4**2


def _transform_integrand(phi: TestFunction, ys: np.ndarray, form: str) -> Callable:
    """Integrand of phi_hat in u = sqrt(x): 2 phi(u^2)/u Phi(u^2 |y|), all y of one sign."""
    ys = np.asarray(ys, dtype=float)
    return lambda u: _kernel_block(u, ys, form) * phi(u * u)[None, :]


def _base_panels(phi: TestFunction, y_abs: float) -> int:
    lo, hi = phi.support
    periods = (math.sqrt(hi) - math.sqrt(lo)) * 2 * math.sqrt(y_abs) / (2 * math.pi)
    return max(16, int(2 * periods) + 1)


def _panel_edges(phi: TestFunction, panels: int) -> np.ndarray:
    lo, hi = phi.support
    return np.linspace(math.sqrt(lo), math.sqrt(hi), panels + 1)


def phi_hat(phi: TestFunction, y: float, tol: float = 1e-12, form: str = "printed", order: int = 24) -> QuadratureReport:
    """int phi(x)/x Phi(x|y|) dx; Phi^{++} for y > 0 and Phi^{-+} for y < 0."""
    if y == 0:
        raise ValueError("phi_hat needs y != 0")
    panels = _base_panels(phi, abs(y))
    f = _transform_integrand(phi, np.array([y]), form)
    for _ in range(12):
        x1, w1 = panel_nodes(_panel_edges(phi, panels), order)
        x2, w2 = panel_nodes(_panel_edges(phi, panels), order + order // 2)
        v1 = f(x1)[0] @ w1
        v2 = f(x2)[0] @ w2
        err = abs(v2 - v1)
        if err <= tol:
            return QuadratureReport(complex(v2), float(err), len(x1) + len(x2))
        panels *= 2
    raise ConvergenceError(f"phi_hat error {err:.3g} above tolerance {tol:.3g} at y={y}")


def _trapezoid_nodes(phi: TestFunction, y_abs: float) -> int:
    """Node count resolving both the Bessel oscillation and the bump edges."""
    lo, hi = phi.support
    length = math.sqrt(hi) - math.sqrt(lo)
    return max(64, int(1.2 * length / math.pi * (2 * math.sqrt(y_abs) + 100)))


def _kernel_block(u: np.ndarray, ys: np.ndarray, form: str) -> np.ndarray:
    """Kernel part of the u-integrand for a block of y of one sign."""
    root = np.sqrt(np.abs(ys))[:, None]
    z = 2 * u[None, :] * root
    if ys[0] > 0:
        sign = 1.0 if form == "printed" else -1.0
        return -math.sqrt(2) * root * (sp.y0(z) + sign * sp.j0(z))
    return 4 * root * sp.k0(z) / GAMMA_3_4**2


def _trapezoid_block(phi: TestFunction, ys: np.ndarray, nodes: int, form: str):
    """Trapezoid and midpoint sums on the same spacing; the pair gives
    the doubled rule and an error estimate."""
    lo, hi = (math.sqrt(v) for v in phi.support)
    h = (hi - lo) / nodes
    # the integrand vanishes to all orders at both ends
    grid = lo + h * np.arange(1, nodes)
    mids = lo + h * (np.arange(nodes) + 0.5)
    t = h * (_kernel_block(grid, ys, form) @ phi(grid * grid))
    m = h * (_kernel_block(mids, ys, form) @ phi(mids * mids))
    return 0.5 * (t + m), 0.5 * np.abs(t - m)


def phi_hat_many(phi: TestFunction, ys, tol: float = 1e-12, form: str = "printed", block: int = 128):
    """phi_hat at many y at once; returns (values, error estimates).

    The integrand is smooth and vanishes to all orders at the ends of the
    support, so the trapezoid rule converges faster than any power of the
    step.  Blocks of y share one grid sized for their largest |y|.
    """
    ys = np.asarray(ys, dtype=float)
    if np.any(ys == 0):
        raise ValueError("phi_hat needs y != 0")
    lo, hi = phi.support
    dtype = np.result_type(np.asarray(phi(np.array([0.5 * (lo + hi)]))), float)
    values = np.zeros(len(ys), dtype=dtype)
    errors = np.zeros(len(ys))
    for sign in (1, -1):
        idx = np.nonzero(np.sign(ys) == sign)[0]
        idx = idx[np.argsort(np.abs(ys[idx]))]
        for start in range(0, len(idx), block):
            todo = idx[start : start + block]
            nodes = _trapezoid_nodes(phi, float(np.max(np.abs(ys[todo]))))
            for _ in range(6):
                v, e = _trapezoid_block(phi, ys[todo], nodes, form)
                values[todo] = v
                errors[todo] = e
                todo = todo[e > tol]
                if len(todo) == 0:
                    break
                nodes *= 2
            else:
                raise ConvergenceError("phi_hat_many could not reach the tolerance")
    return values, errors


# ---------------------------------------------------------------------------
# main terms and coefficients


def main_term_R(phi: TestFunction, x: float) -> float:
    """(gamma - log 4 pi + 1/2) phi^+(1/2) pi^{1/2} x^{-1} / Gamma(3/4)."""
    if x <= 0:
        raise ValueError("x must be positive")
    m = phi.mellin(0.5).real
    return (EULER_GAMMA - math.log(4 * math.pi) + 0.5) * m * math.sqrt(math.pi) / x / GAMMA_3_4


def main_term_derived(phi: TestFunction, x: float) -> float:
    """pi^{1/2} x^{-1}/Gamma(3/4) * int phi(u) u^{-1/2} (log(u/x^2)/2 + kappa) du."""
    if x <= 0:
        raise ValueError("x must be positive")
    m0 = phi.mellin(0.5).real
    m1 = phi.mellin(0.5, log_power=1).real
    inner = 0.5 * m1 + (KAPPA - math.log(x)) * m0
    return math.sqrt(math.pi) / x / GAMMA_3_4 * inner


def main_term(phi: TestFunction, x: float, form: str = "printed") -> float:
    _check_form(form)
    return main_term_R(phi, x) if form == "printed" else main_term_derived(phi, x)


def _check_form(form: str) -> None:
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}")


def a_coeff(n: int) -> float:
    """Gamma(1/2 - sgn(n)/4) L_n(1/2) / (2 sqrt(pi |n|))."""
    if n == 0:
        raise ValueError("a_n is defined for n != 0")
    g = GAMMA_1_4 if n > 0 else GAMMA_3_4
    return g * zagier_L_half(n) / (2 * math.sqrt(math.pi * abs(n)))


def a_table(n_max: int, sign: int = 1) -> np.ndarray:
    """a_{sign*n} for n = 0..n_max (index 0 holds 0)."""
    out = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        out[n] = a_coeff(sign * n)
    return out


def a_array(ns) -> np.ndarray:
    return np.array([a_coeff(int(n)) for n in ns])


def theta_multiplier(c: int, d: int) -> complex:
    return arith.epsilon_d(d).conjugate() * arith.symbol_shimura(c, d)


def _e(x) -> np.ndarray:
    return np.exp(2j * math.pi * np.asarray(x, dtype=float))


# ---------------------------------------------------------------------------
# the three identities


@dataclass(frozen=True)
class VoronoiReport:
    case: str
    a: int
    c: int
    form: str
    lhs: complex
    rhs: complex
    main_term: complex
    n_truncation: int
    tail_estimate: float
    quadrature_error: float
    residual: float

    def csv_row(self) -> tuple:
        return (
            self.case, self.a, self.c, self.form, self.lhs.real, self.lhs.imag,
            self.rhs.real, self.rhs.imag, self.n_truncation, self.tail_estimate, self.residual,
        )


BLOCK_RATIO = 2 ** 0.25


def _block_edges(n_max: int, start: int) -> list[int]:
    """Right-to-left edges n_max = e0 > e1 > ... with e_{k+1} = floor(e_k / 2^{1/4})."""
    edges = [n_max]
    while edges[-1] > start:
        edges.append(int(edges[-1] / BLOCK_RATIO))
    return edges


@dataclass
class DualSeries:
    """phi_hat(scale * n) a_{mult * n} for n = +-1..N.

    N grows by factors of 2^{1/4} until three consecutive blocks
    (n/2^{1/4}, n] at the top each contribute less than tol/10 in absolute
    value.
    """

    phi: TestFunction
    scale: float
    mult: int
    tol: float
    form: str
    n_max: int = 0
    pos: np.ndarray = field(default_factory=lambda: np.zeros(1))
    neg: np.ndarray = field(default_factory=lambda: np.zeros(1))
    qerr: float = 0.0

    def extend(self, n_new: int) -> None:
        n = np.arange(self.n_max + 1, n_new + 1)
        if len(n) == 0:
            return
        qtol = self.tol / 100
        h, e = phi_hat_many(self.phi, np.concatenate([self.scale * n, -self.scale * n]), qtol, self.form)
        k = len(n)
        ap = a_array(self.mult * n)
        am = a_array(-self.mult * n)
        self.pos = np.concatenate([self.pos, h[:k] * ap])
        self.neg = np.concatenate([self.neg, h[k:] * am])
        self.qerr += float(np.sum(e[:k] * np.abs(ap)) + np.sum(e[k:] * np.abs(am)))
        self.n_max = n_new

    def block_sizes(self, start: int = 64) -> list[float]:
        """Absolute contributions of the top blocks, newest first."""
        edges = _block_edges(self.n_max, start)
        mass = np.abs(self.pos) + np.abs(self.neg)
        return [float(np.sum(mass[lo + 1 : hi + 1])) for hi, lo in zip(edges, edges[1:])]

    def ensure(self, blocks_quiet: int = 3, start: int = 64, n_cap: int = 1 << 18) -> None:
        if self.n_max == 0:
            self.extend(start)
        while True:
            sizes = self.block_sizes(start)[:blocks_quiet]
            if len(sizes) == blocks_quiet and max(sizes) < self.tol / 10:
                return
            if self.n_max >= n_cap:
                raise ConvergenceError(f"dual sum not converged by n = {n_cap}")
            self.extend(max(self.n_max + 1, int(math.ceil(self.n_max * BLOCK_RATIO))))

    def tail(self) -> float:
        """Size of the last block, a proxy for the remainder."""
        sizes = self.block_sizes()
        return sizes[0] if sizes else 0.0

    def twisted(self, phase: Callable[[np.ndarray], np.ndarray]) -> complex:
        """sum_{n != 0} phi_hat(scale n) a_{mult n} phase(n)."""
        n = np.arange(1, self.n_max + 1)
        return complex(np.sum(self.pos[1:] * phase(n)) + np.sum(self.neg[1:] * phase(-n)))


def _lhs(phi: TestFunction, a: int, c: int) -> complex:
    lo, hi = phi.support
    n = np.arange(max(1, math.ceil(lo)), math.floor(hi) + 1)
    if len(n) == 0:
        return 0j
    coeffs = a_array(n)
    return complex(np.sum(phi(n.astype(float)) * coeffs * _e(a * n / c)))


_DUALS: dict = {}


def _dual(phi: TestFunction, scale: float, mult: int, tol: float, form: str) -> DualSeries:
    key = (phi.pieces, round(scale, 15), mult, tol, form)
    if key not in _DUALS:
        _DUALS[key] = DualSeries(phi, scale, mult, tol, form)
    series = _DUALS[key]
    series.ensure()
    return series


def clear_cache() -> None:
    _DUALS.clear()


def _report(case, a, c, form, lhs, main, dual_value, series, tol):
    rhs = main + dual_value
    tail = sum(s.tail() for s in series)
    qerr = sum(s.qerr for s in series)
    return VoronoiReport(
        case, a, c, form, complex(lhs), complex(rhs), complex(main),
        max(s.n_max for s in series), tail, qerr, abs(lhs - rhs),
    )


def voronoi_check_c0mod4(phi: TestFunction, a: int, c: int, tol: float = 1e-8, form: str = "printed") -> VoronoiReport:
    """Twisted sum against theta(M0) e(1/8) [main(c) + sum phi_hat(4 pi^2 n/c^2) a_n e(-dn/c)]."""
    _check_form(form)
    if c <= 0 or c % 4 or math.gcd(a, c) != 1:
        raise ValueError("need c = 0 mod 4 and (a, c) = 1")
    d = pow(a, -1, c)
    lhs = _lhs(phi, a, c)
    z = theta_multiplier(c, d) * cmath.exp(2j * math.pi / 8)
    series = _dual(phi, 4 * math.pi**2 / c**2, 1, tol, form)
    dual = series.twisted(lambda n: _e(-d * n / c))
    return _report("c0mod4", a, c, form, lhs, z * main_term(phi, c, form), z * dual, [series], tol)


def voronoi_check_codd(phi: TestFunction, a: int, c: int, tol: float = 1e-8, form: str = "printed") -> VoronoiReport:
    """Twisted sum against theta(M1) sqrt2 [main(4c) + sum phi_hat(pi^2 n/c^2) a_{4n} e(dn/c)]."""
    _check_form(form)
    if c <= 0 or c % 2 == 0 or math.gcd(a, c) != 1:
        raise ValueError("need odd c and (a, c) = 1")
    d = (-pow(4 * a, -1, c)) % c if c > 1 else 0
    lhs = _lhs(phi, a, c)
    z = arith.epsilon_d(c).conjugate() * (arith.jacobi_classical(4 * d, c) if c > 1 else 1) * math.sqrt(2)
    series = _dual(phi, math.pi**2 / c**2, 4, tol, form)
    dual = series.twisted(lambda n: _e(d * n / c))
    return _report("codd", a, c, form, lhs, z * main_term(phi, 4 * c, form), z * dual, [series], tol)


def voronoi_check_c2mod4(phi: TestFunction, a: int, c: int, tol: float = 1e-8, form: str = "printed") -> VoronoiReport:
    """The two-cusp identity for c = 2 mod 4 with c1 = c/2."""
    _check_form(form)
    if c <= 0 or c % 4 != 2 or math.gcd(a, c) != 1:
        raise ValueError("need c = 2 mod 4 and (a, c) = 1")
    c1 = c // 2
    d4 = (-pow(8 * a, -1, c1)) % c1 if c1 > 1 else 0
    d5 = (-pow(2 * a, -1, c1)) % c1 if c1 > 1 else 0
    inv4 = arith.epsilon_d(c1) * (arith.jacobi_classical(8 * a, c1) if c1 > 1 else 1)
    theta5 = arith.epsilon_d(c1).conjugate() * (arith.jacobi_classical(4 * d5, c1) if c1 > 1 else 1)
    lhs = _lhs(phi, a, c)
    main = (math.sqrt(2) * inv4 - theta5 * math.sqrt(2)) * main_term(phi, 4 * c1, form)
    s4 = _dual(phi, math.pi**2 / (4 * c1**2), 1, tol, form)
    s5 = _dual(phi, math.pi**2 / c1**2, 4, tol, form)
    dual = math.sqrt(2) * inv4 * s4.twisted(lambda n: _e(d4 * n / c1))
    dual -= theta5 * math.sqrt(2) * s5.twisted(lambda n: _e(d5 * n / c1))
    return _report("c2mod4", a, c, form, lhs, main, dual, [s4, s5], tol)


def voronoi_check(case: str, phi: TestFunction, a: int, c: int, tol: float = 1e-8, form: str = "printed") -> VoronoiReport:
    funcs = {"c0mod4": voronoi_check_c0mod4, "codd": voronoi_check_codd, "c2mod4": voronoi_check_c2mod4}
    if case not in funcs:
        raise ValueError(f"case must be one of {sorted(funcs)}")
    return funcs[case](phi, a, c, tol, form)


def case_of(c: int) -> str:
    if c % 4 == 0:
        return "c0mod4"
    return "codd" if c % 2 else "c2mod4"
