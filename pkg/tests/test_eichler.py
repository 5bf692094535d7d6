import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from falsetheta.errors import BranchCutError, DomainError
from falsetheta.numeric import sqrt_principal
from falsetheta.theta.eichler import (EichlerPath, eichler_eta3, eichler_eta3_erf_series, eichler_f,
                                      estar_principal, integrate_path)
from falsetheta.theta.false_theta import F_false, eta_cubed, f_unary
from falsetheta.theta.verify import verify_completion_limit, verify_integral_representation

# max over k <= 30 of |e^{2 pi d V} E - E*| / log(k + 2) at d = 1/12, V = 1; frozen
ESTAR_C = 1.41


def _cquad(f, a, b):
    re = integrate.quad(lambda t: f(t).real, a, b, epsabs=1e-13, epsrel=1e-13, limit=400)[0]
    im = integrate.quad(lambda t: f(t).imag, a, b, epsabs=1e-13, epsrel=1e-13, limit=400)[0]
    return complex(re, im)


class TestEta3Integral:
    def test_completion_limit_fixture(self):
        assert verify_completion_limit(1j, 0.5 + 2j) < 1e-9

    def test_completion_limit_random(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 1.5))
            w = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 1.5))
            assert verify_completion_limit(tau, w) < 1e-8

    @pytest.mark.parametrize("rho,V", [(0, 1.0), (Fraction(1, 3), 1.5), (Fraction(2, 5), 0.8 + 0.3j)])
    def test_erf_series_agrees(self, rho, V):
        quad = eichler_eta3(rho, float(rho) + 1j * V, 1e-12)
        series = eichler_eta3_erf_series(rho, V, 1e-10)
        assert abs(quad - series) < 1e-6

    def test_two_paths_agree(self):
        tau = 0.2 + 0.6j
        start = -0.3 + 0.9j

        def F(z):
            return eta_cubed(z) / sqrt_principal(1j * (z - tau))

        # a deeper detour under tau and a wider swing to the right
        alt = EichlerPath(((start, complex(-0.3, 0.15)), (complex(-0.3, 0.15), complex(0.9, 0.15))),
                          complex(0.9, 0.15))
        assert abs(integrate_path(F, alt, math.pi / 4, 1e-12) - eichler_eta3(start, tau)) < 1e-10

    def test_start_on_cut_rejected(self):
        with pytest.raises(BranchCutError):
            eichler_eta3(0.2 + 2j, 0.2 + 1j)

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            eichler_eta3(0, -1j)
        with pytest.raises(DomainError):
            eichler_eta3(0.3 - 0.1j, 1j)
        with pytest.raises(DomainError):
            eichler_eta3_erf_series(0, -1.0)


class TestUnaryIntegral:
    @pytest.mark.parametrize("j,N,tau", [(1, 2, 1j), (1, 3, 0.25 + 1j / 3)])
    def test_integral_representation(self, j, N, tau):
        assert verify_integral_representation(j, N, tau) < 1e-9

    def test_split_path_parameterization(self):
        """sqrt(2N) int_0^inf f(tau + iv)/sqrt(v) dv, with v = u^2 on [0, 1] and the rest from a shifted start."""
        j, N, tau = 1, 3, 0.25 + 1j / 3
        head = _cquad(lambda u: 2 * f_unary(j, N, tau + 1j * u * u), 0.0, 1.0)
        # sqrt(-i (z - tau)) = sqrt(v) on the vertical line, and dz = i dv
        head = math.sqrt(2 * N) * 1j * head
        tail = eichler_f(j, N, tau + 1j, tau)
        direct = eichler_f(j, N, tau, tau)
        assert abs(head + tail - direct) < 1e-10
        assert abs(F_false(j, N, tau) + 1j * direct) < 1e-9

    def test_from_cusp_needs_offset_line(self):
        with pytest.raises(BranchCutError):
            eichler_f(1, 2, Fraction(1, 3), 1 / 3 + 0.2j)
        with pytest.raises(BranchCutError):
            eichler_f(1, 2, 0.3 + 0.1j, 0.3 + 0.5j)

    def test_zero_class_vanishes(self):
        assert eichler_f(0, 2, 1j, 1j) == 0
        assert eichler_f(4, 2, 1j, 1j) == 0


class TestPrincipalPart:
    def test_empty_interval(self):
        assert estar_principal(1, 3, 0.0, 1.0) == 0

    def test_domain(self):
        with pytest.raises(DomainError):
            estar_principal(2, 4, 0.1, 1.0)
        with pytest.raises(DomainError):
            estar_principal(1, 3, 0.2, 1.0)

    def test_brute_force_quadrature(self):
        d, V = 1 / 12, 1.0
        X = math.sqrt(2 * d)
        # k = 1, h' = 0: r = 0, 1 with weights e^{pi i/4 * 0}(-1)^r
        f = lambda x: (1 / math.tan(math.pi / 2 * (x - 0.5)) - 1 / math.tan(math.pi / 2 * (x - 1.5))) * math.exp(
            -math.pi * V * x * x)
        ref = integrate.quad(f, -X, X, epsabs=1e-13, epsrel=1e-13)[0]
        ref = -0.5j * math.exp(2 * math.pi * d * V) * ref
        assert abs(estar_principal(0, 1, d, V) - ref) < 1e-12

    def test_decomposition_stays_bounded(self):
        d, V = 1 / 12, 1.0
        for k, hp in [(1, 0), (2, 1), (5, 2), (13, 4), (30, 7), (50, 1), (97, 5)]:
            E = eichler_eta3(Fraction(hp, k), hp / k + 1j * V)
            diff = cmath.exp(2 * math.pi * d * V) * E - estar_principal(hp, k, d, V)
            assert abs(diff) <= ESTAR_C * math.log(k + 2), (k, hp)
