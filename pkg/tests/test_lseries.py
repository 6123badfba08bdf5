import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zagierlab import arith, lseries
from zagierlab.special import zeta


def squarefree(n):
    return all(n % (p * p) for p in range(2, math.isqrt(n) + 1))


# -- Dirichlet L-functions ---------------------------------------------------


def test_dirichlet_L_examples():
    assert abs(lseries.dirichlet_L(2, 1).value - math.pi**2 / 6) < 1e-10
    assert abs(lseries.dirichlet_L(1, -4).value - math.pi / 4) < 1e-10
    hur = lseries.dirichlet_L(0.5, 5, method="hurwitz")
    smo = lseries.dirichlet_L(0.5, 5, method="smoothed")
    assert abs(hur.value - smo.value) < 1e-8


def test_alternating_series_oracle():
    # 1 - 1/3 + 1/5 - ... with the averaged-partial-sum acceleration
    partial = np.cumsum([(-1) ** k / (2 * k + 1) for k in range(20001)])
    assert abs(lseries.dirichlet_L(1, -4).value - (partial[-1] + partial[-2]) / 2) < 1e-9


@pytest.mark.parametrize("D", [-3, -4, 5, 8, -7, 12, -15, 13, -20, 21])
def test_hurwitz_and_smoothed_agree(D):
    for s in (0.3, 0.5, 0.8):
        a = lseries.dirichlet_L(s, D, method="hurwitz").value
        b = lseries.dirichlet_L(s, D, method="smoothed").value
        assert abs(a - b) < 1e-9


def test_direct_series_in_convergence_region():
    v = lseries.dirichlet_L(3, -4, method="direct-series")
    ref = lseries.dirichlet_L(3, -4).value
    assert abs(v.value - ref) < v.truncation_error + 1e-12
    with pytest.raises(ValueError):
        lseries.dirichlet_L(1, -4, method="direct-series")


def test_dirichlet_L_rejects_bad_input():
    with pytest.raises(ValueError):
        lseries.dirichlet_L(2, 3)
    with pytest.raises(ZeroDivisionError):
        lseries.dirichlet_L(1, 1)


# -- q(w, n) and L*(w, n) ----------------------------------------------------


def test_q_factor_squarefree_is_one():
    for n in range(1, 1001):
        if squarefree(n):
            assert lseries.q_factor(0.3 + 2j, n) == 1
            assert lseries.q_factor(-1.5, n) == 1


def test_q_factor_two_forms_at_45():
    a, b = lseries.q_factor(0.5, 45), lseries.q_factor_closed(0.5, 45)
    assert abs(a - b) < 1e-12
    # n1 = 3, chi = (5/3) = -1: 1 + 1/sqrt3 + 1 at w = 1/2
    assert abs(a - (2 + 1 / math.sqrt(3))) < 1e-12


@given(st.integers(1, 5000), st.floats(-2, 3), st.floats(-5, 5))
def test_q_factor_functional_equation_odd_part(n, re, im):
    w = complex(re, im)
    n1 = arith.squarefree_decompose(n)[1]
    n1 >>= arith.valuation(n1, 2)
    lhs = lseries.q_factor(w, n)
    rhs = n1 ** (1 - 2 * w) * lseries.q_factor(1 - w, n)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_q_factor_functional_equation_full_n1_breaks_for_even_n1():
    # n = 20: n0 = 5, n1 = 2; the product has no factor at 2, so the full n1 cannot appear
    w = 0.2 + 1j
    lhs = lseries.q_factor(w, 20)
    assert lhs == 1
    assert abs(lhs - 2 ** (1 - 2 * w) * lseries.q_factor(1 - w, 20)) > 0.1


@given(st.integers(1, 10**4), st.floats(0.5, 3), st.floats(-20, 20))
def test_q_factor_divisor_bound(n, re, im):
    # each local factor has nu + 1 terms of size at most 1 + p^{-1/2} when Re w >= 1/2
    n1 = arith.squarefree_decompose(n)[1]
    bound = 1.0
    for p, nu in (arith.factorize(n1) if n1 > 1 else ()):
        if p > 2:
            bound *= (nu + 1) * (1 + p**-0.5)
    assert abs(lseries.q_factor(complex(re, im), n)) <= bound * (1 + 1e-12)


@pytest.mark.xfail(strict=True, reason="n^0.1 with constant 1 is too tight: q(1/2, 9) = 2 - 3^(-1/2)")
def test_q_factor_literal_small_power_bound():
    for n in range(1, 10**4 + 1):
        assert abs(lseries.q_factor(0.5, n)) <= n**0.1


def test_L_star_examples():
    for w in (2, 0.5 + 3j, 3.5):
        ref = zeta(w) * (1 - 2 ** (-complex(w)))
        assert abs(lseries.L_star(w, 1).value - ref) < 1e-11
    l5 = lseries.dirichlet_L(0.5, 5).value * (1 + 2**-0.5)  # chi_5(2) = -1
    assert abs(lseries.L_star(0.5, 5).value - l5) < 1e-12
    w = 0.7 + 2j
    ref = lseries.q_factor(w, 45) * lseries.dirichlet_L(w, 5).value * (1 + 2 ** (-w))
    assert abs(lseries.L_star(w, 45).value - ref) < 1e-12


# -- Zagier L-series ---------------------------------------------------------


@given(st.integers(-500, 500).filter(lambda n: n % 4 in (2, 3)))
def test_zagier_L_vanishes(n):
    assert lseries.zagier_L(0.5 + 3j, n).value == 0
    assert lseries.zagier_L_half(n) == 0


def test_zagier_L_at_one_is_zeta_route():
    v = lseries.zagier_L(2, 1)
    assert abs(v.value - math.pi**2 / 6) < 1e-12
    assert abs(v.value - v.cross_check.value) <= v.truncation_error + v.cross_check.truncation_error + 1e-13


def test_zagier_L_dual_route_small_sample():
    for s in (2, 3, 2 + 1j):
        for n in (1, 4, 5, 8, 9, 12, 16, 17, 45, 100, -3, -4, -7):
            v = lseries.zagier_L(s, n)
            c = v.cross_check
            assert abs(v.value - c.value) <= v.truncation_error + c.truncation_error + 1e-13


def test_rho_form_cross_check():
    for n in (1, 5, 8, 12, 13, 21):
        a = lseries.zagier_L(3, n).value
        b = lseries.zagier_L_rho_form(3, n, Q=20000)
        assert abs(a - b) < 1e-7


def test_central_value_soft_envelope():
    vals = [abs(lseries.zagier_L_half(n)) / n ** (1 / 6) for n in range(1, 400) if n % 4 in (0, 1)]
    assert abs(lseries.zagier_L(0.5, 5).value - 0.23175094750401573) < 1e-12
    # a fitted constant; the point is that it stays modest, not a proof
    assert max(vals) < 10


def test_T_l_euler_product():
    for D, l in [(5, 3), (-4, 6), (1, 12), (-3, 35), (8, 9)]:
        for w in (0.5, 1.3 + 2j):
            lhs = l ** (0.5 - w) * lseries.T_l(w, l, D)
            assert abs(lhs - lseries.euler_product_td(w, l, D)) < 1e-12


# -- r_2 ---------------------------------------------------------------------


def test_r2_printed_examples():
    s = 0.9 + 0.4j
    assert abs(lseries.r2(s, 3).value + (1 + 1j) / 2 ** (2 * s)) < 1e-14
    ref5 = (1 + 1j) / 2 ** (2 * s) - (1 + 1j) / 2 ** (6 * s - 0.5)
    assert abs(lseries.r2(s, 5).value - ref5) < 1e-14
    u1 = 2 ** (2 - 4 * s)
    ref4 = (1 + 1j) / 4 * u1 + 4 ** (1 - 2 * s) * lseries.r2(s, 1).value
    assert abs(lseries.r2(s, 4).value - ref4) < 1e-14


@given(st.integers(1, 3000), st.floats(0.8, 3))
def test_r2_enumerated_base_matches_theta_sums(n, sigma):
    s = complex(sigma, 0.3)
    assert abs(lseries.r2(s, n, "enumerated").value - lseries.r2_by_enumeration(s, n)) < 1e-12


def test_r2_printed_base_disagrees_with_enumeration():
    assert abs(lseries.r2(1.5, 1).value - lseries.r2_by_enumeration(1.5, 1)) > 1e-2


# -- series identities -------------------------------------------------------


def test_theta1_series_examples():
    reps = lseries.series_identities("theta1", [1.5], [1, 3], 10**4)
    assert all(r.residual < r.tail_estimate for r in reps)
    r = lseries.series_identity_theta1(2, 5, 10**3)
    assert r.residual < r.tail_estimate
    # n = 3 is not a vanishing case here: both sides equal L*(2s - 1/2, 3)/zeta_2(4s - 1)
    assert abs(reps[1].closed_form) > 0.5


def test_theta0_series_with_enumerated_base():
    for s, n, C in [(1.5, 1, 10**4), (1.5, 5, 10**4), (2, 12, 10**3)]:
        r = lseries.series_identity_theta0(s, n, C, r2_base="enumerated")
        assert r.residual < r.tail_estimate


@pytest.mark.xfail(strict=True, reason="printed 2-adic base cases do not match the theta sums")
def test_theta0_series_with_printed_base():
    r = lseries.series_identity_theta0(1.5, 1, 10**3)
    assert r.residual < r.tail_estimate


def test_series_identity_rejects_small_sigma():
    with pytest.raises(ValueError):
        lseries.series_identities("theta1", [1.0], [1], 100)


# -- mean square -------------------------------------------------------------


def test_large_sieve_monotone():
    scan = lseries.large_sieve_scan(2**12)
    assert all(b >= a for a, b in zip(scan.cumulative, scan.cumulative[1:]))
    assert scan.checkpoints[-1] == 2**12


def test_large_sieve_off_axis_runs():
    scan = lseries.large_sieve_scan(2**8, t=1.0)
    assert np.isfinite(scan.slope) and scan.cumulative[-1] > 0
