import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zagierlab import asymptotics as asy
from zagierlab.special import hyp2f1


def cos_phase(N):
    table = (np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x), np.sin)

    def f(x, k=0):
        return N * table[k % 4](np.asarray(x, dtype=float))

    return f


def synthetic_problems():
    out = []
    for N in (1e2, 1e3, 1e4):
        out.append(asy.PhaseProblem(asy.polynomial_phase([0, 0, N], 1.0), asy.bump_amplitude(0.2, 1.9), 0, 2, N, 1, 0.5))
        out.append(asy.PhaseProblem(asy.polynomial_phase([0, 0, N, N / 3], 0.9), asy.bump_amplitude(0.2, 1.9), 0, 2, N, 1, 0.5))
        out.append(asy.PhaseProblem(cos_phase(N), asy.bump_amplitude(math.pi / 2, 1.5 * math.pi), math.pi / 2, 1.5 * math.pi, N, 1, 0.5))
    out.append(asy.PhaseProblem(asy.polynomial_phase([0, 0, 1e3, 0, -1e3 / 8], 1.1), asy.bump_amplitude(0.3, 1.9), 0, 2, 1e3, 1, 0.5))
    return out


# -- Stirling ----------------------------------------------------------------


def test_stirling_ratio_examples():
    e50 = abs(asy.stirling_ratio(0.5, 50) - 1)
    e200 = abs(asy.stirling_ratio(0.5, 200) - 1)
    assert e50 < 2 / 50
    assert e200 < e50 / 4 * 1.01
    assert abs(asy.stirling_ratio(2, 100) - 1) < 2 / 100


@given(st.floats(0.25, 3), st.floats(20, 2000))
def test_stirling_error_is_order_one_over_t(sigma, t):
    err = abs(asy.stirling_ratio(sigma, t) - 1)
    assert err * t < 1 + abs(sigma - 0.5) * 4


def test_stirling_rejects_small_t():
    with pytest.raises(ValueError):
        asy.stirling_ratio(0.5, 1)


# -- V(y, t) -----------------------------------------------------------------


def test_G_weight():
    assert asy.G_weight(0) == 1
    assert abs(asy.G_weight(0.5, 1)) < 1e-15
    assert abs(asy.G_weight(0.5, 3)) < 1e-15


@given(st.complex_numbers(max_magnitude=3), st.integers(0, 4))
def test_G_weight_even(z, n):
    a, b = asy.G_weight(z, n), asy.G_weight(-z, n)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@pytest.mark.parametrize("y,t", [(1, 30), (20, 20), (200, 20), (0.05, 50)])
def test_V_contour_independence(y, t):
    vals = [asy.V_weight(y, t, a) for a in (0.4, 0.7, 1.0)]
    assert max(abs(v - vals[0]) for v in vals) < 1e-8


def test_V_leading_term_envelope():
    gaps = [abs(asy.V_weight(1, t) - asy.V_leading(1, t)) * t for t in (20, 30, 60, 120)]
    assert max(gaps) < 1
    assert gaps == sorted(gaps, reverse=True)


def test_V_is_real_and_array_matches_scalar():
    ys = np.array([0.5, 3.0, 30.0, 300.0])
    arr = asy.V_weight_array(ys, 25.0)
    for y, v in zip(ys, arr):
        assert abs(v - asy.V_weight(y, 25.0)) < 1e-13
        assert abs(v.imag) < 1e-12


def test_V_depends_on_ratio_at_large_t():
    # the decay is in y/t, so V(10t, t) stays at the same size as t grows
    assert abs(asy.V_weight(200, 20) - asy.V_weight(300, 30)) < 1e-5
    assert abs(asy.V_weight(300, 30)) > 1e-3


# -- stationary phase --------------------------------------------------------


def test_huxley_quadratic_example():
    N = 1e3
    p = asy.PhaseProblem(asy.polynomial_phase([0, 0, N], 1.0), asy.bump_amplitude(0.2, 1.9), 0, 2, N, 1, 0.5)
    h = asy.huxley_main_term(p)
    g1 = asy.bump_amplitude(0.2, 1.9)(np.array([1.0]))[0]
    assert abs(h.x0 - 1) < 1e-12
    assert abs(h.main - g1 * np.exp(0.25j * math.pi) / math.sqrt(2 * N)) < 1e-14
    assert abs(asy.oscillatory_integral(p).value - h.main) <= h.error_budget


def test_huxley_cosine_example():
    p = synthetic_problems()[2]
    h = asy.huxley_main_term(p)
    assert abs(h.x0 - math.pi) < 1e-12
    assert abs(asy.oscillatory_integral(p).value - h.main) <= h.error_budget


def test_huxley_family_within_budget():
    for p in synthetic_problems():
        h = asy.huxley_main_term(p)
        assert abs(asy.oscillatory_integral(p).value - h.main) / abs(h.main) <= h.error_budget / abs(h.main)


def test_no_stationary_point_raises():
    p = asy.PhaseProblem(asy.polynomial_phase([0, 100.0]), asy.bump_amplitude(1, 2), 1, 2, 100, 1, 1)
    with pytest.raises(ValueError):
        asy.huxley_main_term(p)


def test_bky_examples():
    def problem(N):
        return asy.PhaseProblem(asy.polynomial_phase([0, N]), asy.bump_amplitude(1, 2), 1, 2, N, 1, 1)

    lhs3, rhs1 = asy.bky_bound_check(problem(1e3), 1e3, 1, 1, 1e3, 0.5, 1)
    lhs2, _ = asy.bky_bound_check(problem(1e2), 1e2, 1, 1, 1e2, 0.5, 1)
    assert lhs3 / lhs2 < 1e-3
    lhs3b, rhs2 = asy.bky_bound_check(problem(1e3), 1e3, 1, 1, 1e3, 0.5, 2)
    assert lhs3b == lhs3 and rhs2 < rhs1
    for A in (1, 2, 3):
        _, r1 = asy.bky_bound_check(problem(1e2), 50, 1, 1, 1e2, 0.5, A)
        _, r2 = asy.bky_bound_check(problem(1e2), 100, 1, 1, 1e2, 0.5, A)
        assert r2 <= r1 * 2.0**-A * (1 + 1e-12)


# -- spectral weight and I(m, x) --------------------------------------------


def test_q_N_limits():
    assert 0.99 <= asy.q_N(1e4, 1) <= 1
    assert 0.99 <= asy.q_N(1e4, 3) <= 1
    r = np.linspace(-50, 50, 101)
    assert np.all(asy.h_weight(r, 20, 3, 2) > 0)
    assert np.allclose(asy.h_weight(r, 20, 3, 2), asy.h_weight(-r, 20, 3, 2))


@given(st.floats(2.05, 8), st.floats(-40, 40))
@settings(max_examples=20)
def test_legendre_route_matches_series(x, r):
    a = asy._hyp_factor([r], x, "legendre")[0]
    b = asy._hyp_factor([r], x, "hypergeometric")[0] if 4 / x**2 < 0.9 else a
    assert abs(a - b) <= 1e-9 * max(1.0, abs(b))


def test_hyp2f1_via_legendre():
    for r in (0.5, 3.0, 12.0):
        ref = hyp2f1(0.25 + 1j * r, 0.75 + 1j * r, 1 + 2j * r, 4 / 9)
        assert abs(asy.hyp2f1_via_legendre([r], 3.0)[0] - ref) < 1e-10 * abs(ref)


def test_I_matches_simplified_form():
    T = 40
    r = asy.I_integrand(5, 2.1, T, 5)
    assert r.error < 1e-10
    assert abs(r.value - r.leading) / abs(r.leading) <= 10 / T


def test_I_decays_with_gaussian_envelope():
    near = abs(asy.I_integrand(5, 2.05, 40, 5).value)
    far = abs(asy.I_integrand(5, 3.0, 40, 5).value)
    envelope = math.exp(-25 * (math.acosh(1.5) ** 2 - math.acosh(1.025) ** 2))
    assert far / near <= 10 * envelope


def test_I_rejects_bad_arguments():
    with pytest.raises(ValueError):
        asy.I_integrand(5, 2.0, 40, 5)


# -- saddle point ------------------------------------------------------------


def test_phase_derivative_identities():
    L, cq, T = 1376.0, 12, 40.0
    y = np.array([1.1, 1.5, 1.9])
    h = 1e-6
    fd = T * (asy.A_of_y(y + h, L, cq) - asy.A_of_y(y - h, L, cq)) / (2 * h)
    assert np.allclose(fd, asy.TA_prime(y, T, L, cq), rtol=1e-6)
    ctx = asy.SaddleContext.on_resonance(40, 2, 4, 3)
    x0, h = ctx.x0, 1e-4
    second = (asy.h_minus(x0 + h, ctx) - 2 * asy.h_minus(x0, ctx) + asy.h_minus(x0 - h, ctx)) / h**2
    assert abs(second / asy.h_minus_second(ctx) - 1) < 1e-6
    first = (asy.h_minus(x0 + h, ctx) - asy.h_minus(x0 - h, ctx)) / (2 * h)
    assert abs(first) < 1e-6 * abs(asy.h_minus_second(ctx))
    assert abs(asy.h_minus(x0, ctx) - ctx.h_val) < 1e-9 * abs(ctx.h_val)


def test_plateau():
    x = np.array([0.9, 1.0, 1.1, 1.2, 1.5, 1.8, 1.95, 2.0, 2.5])
    v = asy.plateau(x)
    assert v[0] == v[1] == v[-1] == v[-2] == 0
    assert np.all(v[3:6] == 1) and 0 < v[2] < 1 and 0 < v[6] < 1


def test_saddle_on_resonance_example():
    ctx = asy.SaddleContext.on_resonance(40, 5, 4, 3)
    res = asy.saddle_phi_hat(ctx, form="derived")
    assert res.on_resonance
    assert res.scaled_error <= 5


@pytest.mark.parametrize("T,m", [(640, 1), (640, 4), (640, 16), (80, 2000)])
def test_saddle_off_resonance_negligible(T, m):
    base = asy.SaddleContext.on_resonance(20, 2, 4, 3)
    ctx = asy.SaddleContext.build(T, 2, 4, 3, base.L, m)
    res = asy.saddle_phi_hat(ctx)
    assert not res.on_resonance and abs(res.quadrature) < 1e-6 and res.asymptotic == 0


def test_saddle_off_support_but_not_negligible_raises():
    base = asy.SaddleContext.on_resonance(20, 2, 4, 3)
    with pytest.raises(asy.NegligibilityError):
        asy.saddle_phi_hat(asy.SaddleContext.build(80, 2, 4, 3, base.L, 1))


def test_relative_discrepancy_shrinks_with_T():
    rel = []
    for T in (20, 40, 80):
        res = asy.saddle_phi_hat(asy.SaddleContext.on_resonance(T, 2, 4, 3), form="derived")
        rel.append(abs(res.asymptotic - res.quadrature) / abs(res.quadrature))
    assert rel[0] > rel[1] > rel[2]


def test_hankel_coefficients():
    a = asy.hankel_coefficients(2)
    assert a == [1.0, -1 / 8, 9 / 128, -225 / 3072]
