import cmath
import math

import pytest
from scipy import integrate, special

from falsetheta.errors import DomainError
from falsetheta.modular import eta_multiplier, inverse_neg_mod, matrix_hk
from falsetheta.qseries import unimodal_count
from falsetheta.rademacher import (RademacherConfig, TermBreakdown, alpha_f_breakdown, alpha_g_formula,
                                   auluck_main, u_rademacher)

QUAD_TOL = 1e-10


def _alpha_f_term_short_interval(n, k):
    """k-th term with Kloosterman phases expanded by hand and x on [-1/sqrt6, 1/sqrt6]."""
    X = 1 / math.sqrt(6)
    beta = 2 * math.pi / (math.sqrt(3) * k) * math.sqrt(n + 1 / 24)

    def cquad(g):
        re = integrate.quad(lambda x: g(x).real, -X, X, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
        im = integrate.quad(lambda x: g(x).imag, -X, X, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
        return complex(re, im)

    total = 0j
    for h in range(k):
        if math.gcd(h, k) != 1:
            continue
        hp = inverse_neg_mod(h, k)
        outer = cmath.exp(1j * math.pi / 4) / eta_multiplier(matrix_hk(h, k)).value()
        outer *= cmath.exp(2j * math.pi * (-(24 * n + 1) * h - 2 * hp) / (24 * k))
        for r in range(2 * k):
            phase = (-1) ** r * cmath.exp(1j * math.pi * (r + 0.5) ** 2 * hp / k)

            def g(x, r=r):
                one_m = max(1 - 6 * x * x, 0.0)
                return complex(one_m ** 0.75 / math.tan(math.pi / (2 * k) * (x - r - 0.5))
                               * special.iv(1.5, beta * math.sqrt(one_m)))

            total += outer * phase * cquad(g)
    return 1j * math.pi / (2 ** 0.25 * (24 * n + 1) ** 0.75) / k ** 2 * total


class TestAlphaF:
    @pytest.mark.parametrize("n", [0, 7])
    def test_two_forms_agree(self, n):
        bd = alpha_f_breakdown(n, RademacherConfig(kmax=3, quad_tol=QUAD_TOL))
        for k in (1, 2, 3):
            other = _alpha_f_term_short_interval(n, k)
            assert abs(bd.per_k[k - 1] - other) <= 10 * QUAD_TOL * max(1.0, abs(other)), k

    def test_cot_argument_avoids_poles(self):
        # |x/sqrt6| < 1/2, so x/sqrt6 - r - 1/2 lies strictly inside (-r-1, -r) and never hits 2kZ
        for k in range(1, 51):
            for r in range(2 * k):
                lo, hi = -1 / math.sqrt(6) - r - 0.5, 1 / math.sqrt(6) - r - 0.5
                # the closed interval contains no integer at all
                assert math.floor(lo) == math.floor(hi) and lo > math.floor(lo), (k, r)

    def test_negative_n(self):
        with pytest.raises(DomainError):
            alpha_f_breakdown(-1)


class TestAlphaG:
    @pytest.mark.parametrize("n,exp", [(1, 2), (9, 300)])
    def test_values(self, n, exp):
        val, _ = alpha_g_formula(n)
        assert abs(val - exp) < 0.5

    def test_leading_term_dominates(self):
        m = 12 * 9 - 1
        lead = 2 * math.pi / m * special.iv(2, math.pi * math.sqrt(m) / 3)
        val, bd = alpha_g_formula(9)
        assert abs(bd.per_k[0] - lead) < 1e-9 * lead
        assert abs(lead / val - 1) < 0.02

    def test_n_zero_rejected(self):
        with pytest.raises(DomainError):
            alpha_g_formula(0)


class TestUnimodal:
    @pytest.mark.parametrize("n,exp", [(9, 130), (4, 8), (1, 1)])
    def test_examples(self, n, exp):
        res = u_rademacher(n)
        assert res.rounded == exp and not res.flagged
        assert abs(res.approx - (res.alpha_g - res.alpha_f)) == 0

    @pytest.mark.slow
    def test_first_fifty(self):
        for n in range(1, 51):
            res = u_rademacher(n)
            assert res.rounded == unimodal_count(n) and abs(res.approx - res.rounded) < 0.25, n


def test_auluck_rearrangement():
    assert auluck_main(3) * 8 * 3 ** 0.75 * 3 ** 1.25 == pytest.approx(math.exp(2 * math.pi), rel=1e-14)
    with pytest.raises(DomainError):
        auluck_main(0)


def test_config_validation():
    for bad in (dict(kmax=0), dict(kmax=2.5), dict(quad_tol=0), dict(round_margin=0.5), dict(round_margin=0)):
        with pytest.raises(DomainError):
            RademacherConfig(**bad)


def test_breakdown_sums():
    terms = [1e16, 1.0, -1e16, 0.5j]
    bd = TermBreakdown.from_terms(terms)
    assert bd.total == 1 + 0.5j
    assert bd.partial(2) == 1e16 + 1
    bd = alpha_f_breakdown(9, RademacherConfig(kmax=6))
    assert abs(sum(bd.per_k) - bd.total) < 1e-12 * abs(bd.total)
