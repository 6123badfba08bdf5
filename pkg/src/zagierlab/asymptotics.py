"""Stirling ratios, the approximate functional equation weight V, stationary
phase, and the saddle-point form of the Voronoi transform of the dyadic
weight attached to the moment problem.

Quadrature is always the reference; every asymptotic formula here is
returned next to the number it approximates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
from scipy import special as sp

from . import voronoi
from .special import ConvergenceError, QuadratureReport, hyp2f1, lanczos_loggamma, panel_nodes, zeta

LOG_PI = math.log(math.pi)
LOG_GAMMA_1_4 = math.lgamma(0.25)


class NegligibilityError(ArithmeticError):
    """An off-resonance transform that should be negligible is not."""


# ---------------------------------------------------------------------------
# Stirling


def stirling_gamma(sigma: float, t: float) -> complex:
    """Leading Stirling approximation to Gamma(sigma + it)."""
    at = abs(t)
    log_mod = 0.5 * math.log(2 * math.pi) + (sigma - 0.5) * math.log(at) - math.pi * at / 2
    phase = t * math.log(at) - t + math.pi * t * (sigma - 0.5) / (2 * at)
    return cmath.exp(complex(log_mod, phase))


def stirling_ratio(sigma: float, t: float) -> complex:
    """Stirling's leading term divided by Gamma(sigma + it) from the Lanczos sum."""
    if abs(t) < 5:
        raise ValueError("stirling_ratio needs |t| >= 5")
    at = abs(t)
    log_mod = 0.5 * math.log(2 * math.pi) + (sigma - 0.5) * math.log(at) - math.pi * at / 2
    phase = t * math.log(at) - t + math.pi * t * (sigma - 0.5) / (2 * at)
    exact = complex(lanczos_loggamma(complex(sigma, t)))
    return cmath.exp(complex(log_mod, phase) - exact)


# ---------------------------------------------------------------------------
# the weight V(y, t)


def G_weight(z, n_poly: int = 2):
    """exp(z^2) prod_{j<n}(1 - z^2/(1/2 + 2j)^2)."""
    if n_poly < 0:
        raise ValueError("n_poly must be nonnegative")
    z = np.asarray(z, dtype=complex)
    w = z * z
    out = np.exp(w)
    for j in range(n_poly):
        out = out * (1 - w / (0.5 + 2 * j) ** 2)
    return out if out.ndim else complex(out)


def log_L_infinity(s, t):
    """log of pi^{-3s/2} Gamma(s/2) Gamma((s+2it)/2) Gamma((s-2it)/2)."""
    s = np.asarray(s, dtype=complex)
    return -1.5 * s * LOG_PI + sp.loggamma(s / 2) + sp.loggamma((s + 2j * t) / 2) + sp.loggamma((s - 2j * t) / 2)


@dataclass(frozen=True)
class VWeight:
    y: float
    t: float
    value: complex
    quadrature_error: float
    tail: float
    nodes: int


@lru_cache(maxsize=32)
def _contour(contour_a: float, n_poly: int, tol: float):
    """Nodes z = a + iv and the t-independent part zeta(1+2z) G(z)/z."""
    if contour_a <= 0:
        raise ValueError("the contour must lie to the right of 0")
    height = 10 * math.sqrt(math.log(1 / tol))
    # the nearest singularity is z = 0, at distance a from the line
    step = min(0.05, contour_a / 6)
    count = int(math.ceil(height / step))
    v = step * np.arange(-count, count + 1)
    z = contour_a + 1j * v
    fixed = zeta(1 + 2 * z) * G_weight(z, n_poly) / z
    return v, z, fixed, step


def _v_integrand(ys, t: float, z, fixed, leading: bool):
    ys = np.asarray(ys, dtype=float)
    if leading:
        log_gamma = (
            z[None, :] * (math.log(t) - 1.5 * LOG_PI - np.log(ys)[:, None])
            + sp.loggamma(0.25 + z / 2)[None, :]
            - LOG_GAMMA_1_4
        )
    else:
        ratio = log_L_infinity(0.5 + z, t) - log_L_infinity(0.5, t)
        log_gamma = ratio[None, :] - z[None, :] * np.log(ys)[:, None]
    return np.exp(log_gamma) * fixed[None, :]


def _v_quadrature(ys, t, contour_a, n_poly, tol, leading):
    v, z, fixed, step = _contour(contour_a, n_poly, tol)
    vals = _v_integrand(ys, t, z, fixed, leading)
    # dz = i dv and the 1/(2 pi i) in front leave step/(2 pi)
    fine = vals.sum(axis=1) * step / (2 * math.pi)
    coarse = vals[:, ::2].sum(axis=1) * 2 * step / (2 * math.pi)
    tail = np.abs(vals[:, 0]) + np.abs(vals[:, -1])
    return fine, np.abs(fine - coarse), tail, len(v)


def V_weight_report(y: float, t: float, contour_a: float = 1.0, n_poly: int = 2, tol: float = 1e-12) -> VWeight:
    """V(y, t) as a contour integral on Re z = contour_a, with error estimates."""
    if y <= 0 or t <= 0:
        raise ValueError("V_weight needs y > 0 and t > 0")
    value, qerr, tail, nodes = _v_quadrature([y], t, contour_a, n_poly, tol, False)
    report = VWeight(y, t, complex(value[0]), float(qerr[0]), float(tail[0]), nodes)
    if report.tail > tol:
        raise ConvergenceError(f"V contour tail {report.tail:.3g} exceeds {tol:.3g}")
    return report


def V_weight(y: float, t: float, contour_a: float = 1.0, n_poly: int = 2, tol: float = 1e-12) -> complex:
    return V_weight_report(y, t, contour_a, n_poly, tol).value


def V_weight_array(ys, t: float, contour_a: float = 1.0, n_poly: int = 2, tol: float = 1e-12, block: int = 256) -> np.ndarray:
    """V(y, t) for many y at one t."""
    ys = np.asarray(ys, dtype=float)
    out = np.empty(ys.shape, dtype=complex)
    flat = ys.ravel()
    res = out.reshape(-1)
    for start in range(0, len(flat), block):
        chunk = flat[start : start + block]
        res[start : start + block] = _v_quadrature(chunk, abs(t), contour_a, n_poly, tol, False)[0]
    return out


def V_leading(y: float, t: float, contour_a: float = 1.0, n_poly: int = 2, tol: float = 1e-12) -> complex:
    """The t-asymptotic leading term: (t/(pi^{3/2} y))^z Gamma(1/4+z/2)/Gamma(1/4) in place of the L_inf ratio."""
    if y <= 0 or t <= 0:
        raise ValueError("V_leading needs y > 0 and t > 0")
    return complex(_v_quadrature([y], t, contour_a, n_poly, tol, True)[0][0])


# ---------------------------------------------------------------------------
# stationary phase


Deriv = Callable[[np.ndarray, int], np.ndarray]


@dataclass(frozen=True)
class PhaseProblem:
    """int_a^b g(x) e(f(x)) dx with scale parameters for the error budgets.

    ``f(x, k)`` and ``g(x, k)`` return the k-th derivative.
    """

    f: Deriv
    g: Deriv
    a: float
    b: float
    theta_f: float
    omega_f: float
    omega_g: float


class HuxleyResult(NamedTuple):
    main: complex
    error_budget: float
    x0: float


def stationary_point(p: PhaseProblem, panels: int = 64, tol: float = 1e-13) -> float:
    """The unique sign change of f' in (a, b): sign scan, then bisection."""
    x = np.linspace(p.a, p.b, panels + 1)
    d = np.asarray(p.f(x, 1), dtype=float)
    changes = np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]
    exact = np.nonzero(d[1:-1] == 0)[0] + 1
    if len(changes) + len(exact) == 0:
        raise ValueError("f' has no sign change in (a, b)")
    if len(exact):
        return float(x[exact[0]])
    if len(changes) > 1:
        raise ValueError("f' changes sign more than once in (a, b)")
    lo, hi = x[changes[0]], x[changes[0] + 1]
    flo = float(p.f(np.array([lo]), 1)[0])
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        fm = float(p.f(np.array([mid]), 1)[0])
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def huxley_main_term(p: PhaseProblem) -> HuxleyResult:
    """g(x0) e(f(x0) +- 1/8)/sqrt|f''(x0)| and the three-part error budget."""
    x0 = stationary_point(p)
    at = np.array([x0])
    f2 = float(p.f(at, 2)[0])
    g0 = complex(p.g(at, 0)[0])
    f0 = float(p.f(at, 0)[0])
    eighth = 0.125 if f2 > 0 else -0.125
    main = g0 * cmath.exp(2j * math.pi * (f0 + eighth)) / math.sqrt(abs(f2))
    kappa = min(x0 - p.a, p.b - x0)
    budget = (
        p.omega_f**4 / (kappa**3 * p.theta_f**2)
        + p.omega_f / p.theta_f**1.5
        + p.omega_f**3 / (p.theta_f**1.5 * p.omega_g**2)
    )
    return HuxleyResult(main, budget, x0)


def oscillatory_integral(p: PhaseProblem, tol: float = 1e-12, order: int = 24) -> QuadratureReport:
    """int g e(f) over [a, b] on Gauss panels sized by the phase variation."""
    sample = np.linspace(p.a, p.b, 4097)
    cycles = float(np.sum(np.abs(np.diff(p.f(sample, 0)))))
    panels = max(16, int(4 * cycles) + 1)

    def integrand(x):
        return p.g(x, 0) * np.exp(2j * math.pi * p.f(x, 0))

    for _ in range(8):
        edges = np.linspace(p.a, p.b, panels + 1)
        x1, w1 = panel_nodes(edges, order)
        x2, w2 = panel_nodes(edges, order + order // 2)
        v1 = integrand(x1) @ w1
        v2 = integrand(x2) @ w2
        err = abs(v2 - v1)
        if err <= tol:
            return QuadratureReport(complex(v2), float(err), len(x1) + len(x2))
        panels *= 2
    raise ConvergenceError(f"oscillatory integral error {err:.3g} above {tol:.3g}")


def bky_bound_check(p: PhaseProblem, R: float, P: float, X: float, Y: float, V_par: float, A: int) -> tuple[float, float]:
    """|int g e(f)| and (b - a) X (1/(RV) + 1/(RP) + Y/(RP)^2)^A with constant 1."""
    lhs = abs(oscillatory_integral(p, tol=1e-14).value)
    rhs = (p.b - p.a) * X * (1 / (R * V_par) + 1 / (R * P) + Y / (R * P) ** 2) ** A
    return lhs, rhs


def bump_amplitude(a: float, b: float) -> Deriv:
    """Standard bump on [a, b] with derivatives, for synthetic phase problems."""
    def g(x, k=0):
        return voronoi._bump_derivative(np.asarray(x, dtype=float), a, b, k)

    return g


def polynomial_phase(coeffs, center: float = 0.0) -> Deriv:
    """f(x) = sum c_j (x - center)^j with derivatives."""
    poly = np.polynomial.Polynomial(coeffs)

    def f(x, k=0):
        return poly.deriv(k)(np.asarray(x, dtype=float) - center) if k else poly(np.asarray(x, dtype=float) - center)

    return f


# ---------------------------------------------------------------------------
# spectral weight and the hypergeometric integral


def q_N(r, N: int):
    """prod_{k<N}(r^2 + (k + 1/2)^2) / (r^2 + 100 N^2)^N."""
    r = np.asarray(r, dtype=float)
    r2 = r * r
    out = np.ones_like(r2)
    for k in range(N):
        out = out * (r2 + (k + 0.5) ** 2) / (r2 + 100 * N * N)
    return out


def h_weight(r, T: float, G: float, N: int):
    """q_N(r) [exp(-(r-T)^2/G^2) + exp(-(r+T)^2/G^2)]."""
    r = np.asarray(r, dtype=float)
    return q_N(r, N) * (np.exp(-((r - T) / G) ** 2) + np.exp(-((r + T) / G) ** 2))


def legendre_q(tau, X: float, tol: float = 1e-14) -> np.ndarray:
    """Q_nu(X) for nu = -1/2 + i tau and real X > 1, many tau at once.

    Uses Q_nu(cosh al) = int_al^inf exp(-(nu+1/2) t) (2 cosh t - 2 cosh al)^{-1/2} dt,
    with t = al + s^2 on the first unit to remove the endpoint singularity.
    """
    if X <= 1:
        raise ValueError("legendre_q needs X > 1")
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    al = math.acosh(X)
    wmax = max(1.0, float(np.max(np.abs(tau))))
    t_end = al + 1 + 2 * math.log(4 / tol)

    # 2 cosh t - 2 cosh al = 4 sinh((t + al)/2) sinh((t - al)/2), free of cancellation
    def near(s):
        t = al + s * s
        half = 0.5 * s * s
        ratio = np.where(s > 0, s / np.sqrt(np.sinh(np.where(s > 0, half, 1.0))), math.sqrt(2.0))
        base = ratio / np.sqrt(np.sinh(al + half))
        return np.exp(-1j * tau[:, None] * t[None, :]) * base[None, :]

    def far(t):
        base = 0.5 / np.sqrt(np.sinh(0.5 * (t + al)) * np.sinh(0.5 * (t - al)))
        return np.exp(-1j * tau[:, None] * t[None, :]) * base[None, :]

    total = np.zeros(len(tau), dtype=complex)
    for f, lo, hi, freq in ((near, 0.0, 1.0, 2 * wmax), (far, al + 1, t_end, wmax)):
        panels = max(4, int(math.ceil((hi - lo) * freq / 12)))
        edges = np.linspace(lo, hi, panels + 1)
        x1, w1 = panel_nodes(edges, 32)
        x2, w2 = panel_nodes(edges, 48)
        v1 = f(x1) @ w1
        v2 = f(x2) @ w2
        if np.max(np.abs(v2 - v1)) > 1e3 * tol:
            raise ConvergenceError("legendre_q quadrature did not settle")
        total += v2
    return total


def hyp2f1_via_legendre(r, x: float) -> np.ndarray:
    """2F1(1/4+ir, 3/4+ir; 1+2ir; 4/x^2) through Q_{-1/2+2ir}(x/2)."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    nu_half = 2j * r
    log_pref = (0.5 + nu_half) * math.log(x) + sp.loggamma(1 + nu_half) - sp.loggamma(0.5 + nu_half) - 0.5 * LOG_PI
    return np.exp(log_pref) * legendre_q(2 * r, x / 2)


@dataclass(frozen=True)
class IntegralReport:
    value: complex
    error: float
    leading: complex
    nodes: int


def _gamma_factor(r):
    """Gamma(1/4+ir) Gamma(3/4+ir)/Gamma(1+2ir)."""
    z = 1j * np.asarray(r, dtype=float)
    return np.exp(sp.loggamma(0.25 + z) + sp.loggamma(0.75 + z) - sp.loggamma(1 + 2 * z))


def _sin_over_cosh(r):
    """sin(pi(1/4 - ir))/cosh(pi r) without overflow."""
    r = np.asarray(r, dtype=float)
    return math.sin(math.pi / 4) - 1j * math.cos(math.pi / 4) * np.tanh(math.pi * r)


def _hyp_factor(r, x: float, route: str) -> np.ndarray:
    """(2/x)^{2ir} Gamma-ratio 2F1(...; 4/x^2), the part of I that carries x."""
    r = np.asarray(r, dtype=float)
    if route == "legendre":
        # the product collapses to sqrt(2x) Q_{-1/2+2ir}(x/2)
        return math.sqrt(2 * x) * legendre_q(2 * r, x / 2)
    if route == "hypergeometric":
        if np.max(np.abs(r)) > 60:
            raise ConvergenceError("the 2F1 series route is limited to |r| <= 60")
        z = 4 / x**2
        series = np.array([hyp2f1(0.25 + 1j * v, 0.75 + 1j * v, 1 + 2j * v, z) for v in r])
        return np.exp(2j * r * math.log(2 / x)) * _gamma_factor(r) * series
    raise ValueError("route must be 'legendre' or 'hypergeometric'")


def _r_grid(T: float, G: float, step: float) -> np.ndarray:
    half = 8 * G
    if T - half <= 0:
        n = int(math.ceil((T + half) / step))
        return step * np.arange(-n, n + 1)
    n = int(math.ceil(half / step))
    right = T + step * np.arange(-n, n + 1)
    return np.concatenate([-right[::-1], right])


def I_leading(m: float, x: float, T: float, G: float, N: int = 1) -> complex:
    """-2 pi i G T^{1/2} (x^2/(x^2-4))^{1/4} q_N(T) cos(2TA) exp(-G^2 A^2) V(m, T), A = arcosh(x/2)."""
    A = math.acosh(x / 2)
    amp = G * math.sqrt(T) * (x * x / (x * x - 4)) ** 0.25 * float(q_N(T, N))
    return -2j * math.pi * amp * math.cos(2 * T * A) * math.exp(-((G * A) ** 2)) * V_weight(m, T)


def I_integrand(m: float, x: float, T: float, G: float, N: int = 1, route: str = "legendre") -> IntegralReport:
    """I(m, x) = int r h(r) V(m, r)/cosh(pi r) (2/x)^{2ir} Gamma-ratio sin(pi(1/4-ir)) 2F1 dr.

    The r-integral runs over the windows T +- 8G and -T +- 8G with the
    trapezoid rule; the estimate compares step sizes h and 2h.
    """
    if x <= 2:
        raise ValueError("I_integrand needs x > 2")
    if T <= 0 or G <= 0:
        raise ValueError("T and G must be positive")
    A = math.acosh(x / 2)
    step = min(G / 8, 0.1, math.pi / (8 * A))
    r = _r_grid(T, G, step)
    weight = r * h_weight(r, T, G, N) * _sin_over_cosh(r)
    # V(m, r) is even in r
    vals = np.array([V_weight_array([m], abs(v))[0] for v in r])
    integrand = weight * vals * _hyp_factor(r, x, route)
    fine = step * np.sum(integrand)
    coarse = 2 * step * np.sum(integrand[::2])
    return IntegralReport(complex(fine), float(abs(fine - coarse)), I_leading(m, x, T, G, N), len(r))


# ---------------------------------------------------------------------------
# saddle-point asymptotics of the Voronoi transform


def plateau(x) -> np.ndarray:
    """Smooth cutoff: 0 outside (1, 2), 1 on [1.2, 1.8]."""
    x = np.asarray(x, dtype=float)

    def step(t):
        t = np.clip(t, 0.0, 1.0)
        a = np.where(t > 0, np.exp(-1 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1 / np.where(t < 1, 1 - t, 1.0)), 0.0)
        return a / (a + b)

    return step((x - 1) / 0.2) * step((2 - x) / 0.2)


def A_of_y(y, L: float, cq: float):
    """arcosh((yL + (cq)^2)/(yL - (cq)^2))."""
    y = np.asarray(y, dtype=float)
    return np.arccosh((y * L + cq**2) / (y * L - cq**2))


def TA_prime(y, T: float, L: float, cq: float):
    """Closed form of T A'(y): -T cq L^{1/2} / ((Ly - (cq)^2) y^{1/2})."""
    y = np.asarray(y, dtype=float)
    return -T * cq * math.sqrt(L) / ((L * y - cq**2) * np.sqrt(y))


@dataclass(frozen=True)
class SaddleContext:
    T: float
    G: float
    c: int
    q: int
    L: float
    m: int
    x0: float
    h_val: float

    @classmethod
    def build(cls, T: float, G: float, c: int, q: int, L: float, m: int) -> "SaddleContext":
        x0 = 2 * T * q * c * c / (L * math.sqrt(m)) + (c * q) ** 2 / L
        return cls(T, G, c, q, L, m, x0, h_resonant(T, q, m))

    @classmethod
    def on_resonance(cls, T: float, G: float, c: int, q: int, T_ref: float = 20.0, x0: float = 1.5) -> "SaddleContext":
        """L fixed by putting x0 at the centre of the plateau for m = 1 at T_ref; m = (T/T_ref)^2 keeps it there."""
        L = (2 * T_ref * q * c * c + (c * q) ** 2) / x0
        m = (T / T_ref) ** 2
        if abs(m - round(m)) > 1e-12:
            raise ValueError("T/T_ref must be an integer")
        return cls.build(T, G, c, q, L, int(round(m)))

    @property
    def y(self) -> float:
        return self.m / self.c**2

    @property
    def cq(self) -> int:
        return self.c * self.q


def h_resonant(T: float, q: int, m: float) -> float:
    """-T arcosh(1 + q sqrt m/T) - sqrt(2 T q sqrt m + m q^2)."""
    sm = math.sqrt(m)
    return -T * math.acosh(1 + q * sm / T) - math.sqrt(2 * T * q * sm + m * q * q)


def h_minus(x, ctx: SaddleContext):
    """-T A(x) - sqrt(L x y), the phase (halved) of the resonant branch."""
    x = np.asarray(x, dtype=float)
    return -ctx.T * A_of_y(x, ctx.L, ctx.cq) - np.sqrt(ctx.L * x * ctx.y)


def h_minus_second(ctx: SaddleContext) -> float:
    """Closed form h_-''(x0) = -y L^{3/2}/(4 T cq sqrt(x0))."""
    return -ctx.y * ctx.L**1.5 / (4 * ctx.T * ctx.cq * math.sqrt(ctx.x0))


@dataclass(frozen=True)
class DyadicWeight:
    """phi(l) = U(l/L) l^{1/4} (l - (cq)^2)^{-1/2} exp(-2iT A - G^2 A^2) V((l - (cq)^2)/(4cq), T)."""

    __test__ = False

    ctx: SaddleContext

    @property
    def support(self) -> tuple[float, float]:
        return self.ctx.L, 2 * self.ctx.L

    def __call__(self, x) -> np.ndarray:
        ctx = self.ctx
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape, dtype=complex)
        inside = (x > ctx.L) & (x < 2 * ctx.L)
        if not np.any(inside):
            return out
        xi = x[inside]
        A = A_of_y(xi / ctx.L, ctx.L, ctx.cq)
        shifted = xi - ctx.cq**2
        v = V_weight_array(shifted / (4 * ctx.cq), ctx.T)
        out[inside] = (
            plateau(xi / ctx.L) * xi**0.25 / np.sqrt(shifted)
            * np.exp(-2j * ctx.T * A - (ctx.G * A) ** 2) * v
        )
        return out


def hankel_coefficients(k: int) -> list[float]:
    """a_j(0) = (-1)(-9)...(-(2j-1)^2)/(j! 8^j) for j < 2k."""
    out = [1.0]
    for j in range(1, 2 * k):
        out.append(out[-1] * -((2 * j - 1) ** 2) / (j * 8))
    return out


def W_factor(Z: float, form: str = "printed", k: int = 3) -> complex:
    """The slowly varying factor W(Z) of the saddle formula, Z = L x0 y.

    It carries the Hankel series P - iQ of the e^{-iz} part of the kernel at
    z = 2 sqrt(Z), truncated after k terms each, and the constant that the
    resonant branch of Y0 +- J0 and the stationary-phase factor leave over.
    """
    z = 2 * math.sqrt(Z)
    a = hankel_coefficients(k)
    P = sum((-1) ** j * a[2 * j] / z ** (2 * j) for j in range(k))
    Q = sum((-1) ** j * a[2 * j + 1] / z ** (2 * j + 1) for j in range(k))
    kappa = 1j if form == "printed" else -1.0
    return -kappa * cmath.exp(-0.25j * math.pi) / math.sqrt(2) * (P - 1j * Q)


SADDLE_CONSTANT = 10.0
NEGLIGIBLE = 1e-6


class SaddleResult(NamedTuple):
    asymptotic: complex
    quadrature: complex
    error_bound: float
    scaled_error: float
    on_resonance: bool


def saddle_asymptotic(ctx: SaddleContext, form: str = "printed", k: int = 3) -> complex:
    """exp(2ih) U(x0) x0^{-1/4} exp(-G^2 arcosh^2(1 + q sqrt m/T)) V(cT/(2 sqrt m), T) W(L x0 m/c^2) / L^{1/4}."""
    U = float(plateau(ctx.x0))
    if U == 0:
        return 0j
    A0 = math.acosh(1 + ctx.q * math.sqrt(ctx.m) / ctx.T)
    V = V_weight(ctx.c * ctx.T / (2 * math.sqrt(ctx.m)), ctx.T)
    W = W_factor(ctx.L * ctx.x0 * ctx.y, form, k)
    return cmath.exp(2j * ctx.h_val) * U * ctx.x0**-0.25 * math.exp(-((ctx.G * A0) ** 2)) * V * W / ctx.L**0.25


def saddle_phi_hat(ctx: SaddleContext, form: str = "printed", k: int = 3, tol: float = 1e-11) -> SaddleResult:
    """Asymptotic against quadrature for phi_hat(m/c^2) of the dyadic weight."""
    phi = DyadicWeight(ctx)
    values, errors = voronoi.phi_hat_many(phi, [ctx.y], tol, form)
    quad = complex(values[0])
    bound_unit = ctx.L**0.25 / (ctx.T * ctx.cq)
    asym = saddle_asymptotic(ctx, form, k)
    on = float(plateau(ctx.x0)) > 0
    if not on and abs(quad) >= NEGLIGIBLE:
        raise NegligibilityError(f"x0 = {ctx.x0:.4g} is off the support but |phi_hat| = {abs(quad):.3g}")
    err = abs(asym - quad)
    return SaddleResult(asym, quad, SADDLE_CONSTANT * bound_unit, err / bound_unit, on)


SWEEP_HEADER = ("T", "G", "c", "q", "m", "asym_re", "asym_im", "quad_re", "quad_im", "abs_err", "bound")


def saddle_sweep(Ts, G: float, cs, qs, form: str = "printed") -> list[tuple]:
    """Rows of the on-resonance grid in the CSV layout of SWEEP_HEADER."""
    rows = []
    for T in Ts:
        for c in cs:
            for q in qs:
                ctx = SaddleContext.on_resonance(T, G, c, q)
                res = saddle_phi_hat(ctx, form)
                rows.append((
                    T, G, c, q, ctx.m, res.asymptotic.real, res.asymptotic.imag,
                    res.quadrature.real, res.quadrature.imag, abs(res.asymptotic - res.quadrature), res.error_bound,
                ))
    return rows
