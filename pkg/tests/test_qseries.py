import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falsetheta.errors import ConvergenceError, CostGuardError, DomainError
from falsetheta.qseries import (IntSeries, brute_force_unimodal, coeffs_f, coeffs_g, eta_series,
                                euler_product, series_inverse, unimodal_count, unimodal_series)
from falsetheta.theta.false_theta import psi_false

F_STRIP = [1, 1, 3, 6, 12, 21, 38, 63, 106, 170]
G_STRIP = [1, 2, 5, 10, 20, 36, 65, 110, 185, 300]
# unimodal sequences of size 1..15 (OEIS A001523)
U_FIRST = [1, 2, 4, 8, 15, 27, 47, 79, 130, 209, 330, 512, 784, 1183, 1765]


def _poly_product(order):
    c = [1] + [0] * (order - 1)
    for j in range(1, order):
        c = [c[i] - (c[i - j] if i >= j else 0) for i in range(order)]
    return c


def test_euler_product_small():
    assert list(euler_product(6).coeffs) == [1, -1, -1, 0, 0, 1]
    assert list(euler_product(1).coeffs) == [1]
    assert euler_product(40).coeffs == tuple(_poly_product(40))


def test_geometric_inverse():
    s = IntSeries(0, [1, -1], 4)
    assert list(series_inverse(s).coeffs) == [1, 1, 1, 1]


def test_non_unit_inverse_rejected():
    with pytest.raises(DomainError):
        series_inverse(IntSeries(0, [2, 1], 4))


def test_displayed_strips():
    assert list(coeffs_g(10).coeffs) == G_STRIP
    assert list(coeffs_f(10).coeffs) == F_STRIP
    assert coeffs_f(10).offset24 == 1 and coeffs_g(10).offset24 == -2


def test_f_series_is_the_false_theta_quotient():
    # -(i/2) psi(tau) / eta(tau)^2 evaluated directly, against the folded integer series
    tau = 0.1 + 0.8j
    eta = eta_series(128).evaluate(tau, tol=1e-14)
    direct = -0.5j * psi_false(0, tau) / eta ** 2
    assert abs(coeffs_f(128).evaluate(tau, tol=1e-14) - direct) < 1e-13 * abs(direct)


def test_u_is_g_minus_f():
    g = coeffs_g(60).coeffs
    f = coeffs_f(60).coeffs
    for n in range(1, 60):
        assert unimodal_count(n) == g[n] - f[n]
    assert unimodal_series(60)[0] == 0


def test_unimodal_examples():
    assert unimodal_count(9) == 130 == 300 - 170
    assert unimodal_count(4) == 8
    assert unimodal_count(1) == 1
    assert [unimodal_count(n) for n in range(1, 16)] == U_FIRST
    assert [brute_force_unimodal(n) for n in range(1, 16)] == U_FIRST


def test_brute_force_examples():
    assert brute_force_unimodal(2) == 2
    assert brute_force_unimodal(3) == 4
    assert brute_force_unimodal(5) == 15


def test_domain_and_cost_guards():
    with pytest.raises(DomainError):
        unimodal_count(0)
    with pytest.raises(DomainError):
        brute_force_unimodal(0)
    with pytest.raises(CostGuardError):
        brute_force_unimodal(41)


def test_evaluate_refuses_short_series():
    with pytest.raises(ConvergenceError):
        coeffs_g(8).evaluate(0.05j)
    with pytest.raises(DomainError):
        coeffs_g(8).evaluate(-1j)


def test_truncate_cannot_extend():
    s = coeffs_g(10)
    assert s.truncate(5).coeffs == s.coeffs[:5]
    with pytest.raises(DomainError):
        s.truncate(11)


def test_pow_negative_is_inverse():
    e = euler_product(30)
    assert (e ** -2).coeffs == coeffs_g(30).coeffs


@settings(max_examples=60)
@given(st.sampled_from([1, -1]), st.lists(st.integers(-50, 50), min_size=1, max_size=25))
def test_inverse_is_exact(c0, tail):
    s = IntSeries(0, [c0] + tail, len(tail) + 1)
    prod = s * series_inverse(s)
    assert prod.coeffs == (1,) + (0,) * (len(tail))


@settings(max_examples=40)
@given(st.lists(st.integers(-9, 9), min_size=3, max_size=12), st.lists(st.integers(-9, 9), min_size=3, max_size=12))
def test_product_commutes_and_matches_numpy(a, b):
    order = min(len(a), len(b))
    A, B = IntSeries(0, a, order), IntSeries(0, b, order)
    assert (A * B).coeffs == (B * A).coeffs
    ref = np.convolve(a[:order], b[:order])[:order]
    assert list((A * B).coeffs) == [int(x) for x in ref]


def test_evaluate_array_and_scalar_agree():
    g = coeffs_g(64)
    taus = np.array([0.3 + 1j, -0.2 + 0.9j])
    vals = g.evaluate(taus)
    assert all(abs(vals[i] - g.evaluate(complex(t))) < 1e-15 * abs(vals[i]) for i, t in enumerate(taus))


def test_g_values_grow_like_partitions_of_two_colours():
    # crude sanity: log g(n) / sqrt(n) approaches 2 pi / sqrt(3)
    g = coeffs_g(256).coeffs
    ratio = math.log(g[255]) / math.sqrt(255)
    assert 3.0 < ratio < 2 * math.pi / math.sqrt(3)
