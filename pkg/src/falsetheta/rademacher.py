"""Exact convergent formula for unimodal sequence counts.

u(n) = alpha_g(n) - alpha_f(n), with

* alpha_g(n) = 2 pi/(12n-1) sum_k K_k(n)/k I_2(pi sqrt(12n-1)/(3k)),
* alpha_f(n) = pi/(2^(3/4) sqrt(3) (24n+1)^(3/4)) sum_k sum_{r mod 2k} K_k(n,r)/k^2
  int_{-1}^{1} (1-x^2)^(3/4) cot(pi/(2k) (x/sqrt6 - r - 1/2)) I_{3/2}(pi/(3 sqrt2 k) sqrt((1-x^2)(24n+1))) dx.

Sums over k run in ascending order with compensated (fsum) accumulation so
results do not depend on evaluation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError
from .modular import (UnityPower, eta_multiplier, inverse_neg_mod, kloosterman_g,
                      matrix_hk)
from .numeric import bessel_i, bessel_i32_array, quad_finite

SQRT6 = math.sqrt(6.0)
TABLE_ROWS = (0, 7, 9, 10, 15, 19, 20)
TABLE_KMAX = (1, 2, 3, 4, 20)


@dataclass(frozen=True)
class RademacherConfig:
    kmax: int = 20
    quad_tol: float = 1e-10
    round_margin: float = 0.25

    def __post_init__(self):
        if int(self.kmax) != self.kmax or self.kmax < 1:
            raise DomainError("kmax must be an integer >= 1")
        if not self.quad_tol > 0:
            raise DomainError("quad_tol must be positive")
        if not 0 < self.round_margin < 0.5:
            raise DomainError("round_margin must lie in (0, 1/2)")


@dataclass(frozen=True)
class TermBreakdown:
    per_k: tuple
    total: complex = field(default=0j)

    @classmethod
    def from_terms(cls, terms):
        terms = tuple(complex(t) for t in terms)
        total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        return cls(terms, total)

    def partial(self, kmax: int) -> complex:
        head = self.per_k[:kmax]
        return complex(math.fsum(t.real for t in head), math.fsum(t.imag for t in head))


@dataclass(frozen=True)
class UnimodalApprox:
    n: int
    approx: float
    rounded: int
    flagged: bool
    alpha_g: float
    alpha_f: float


@lru_cache(maxsize=4096)
def _farey_data(k: int):
    """(h, h', nu_eta(M_{h,k}) exponent) for 0 <= h < k coprime to k."""
    out = []
    for h in range(k):
        if math.gcd(h, k) == 1:
            out.append((h, inverse_neg_mod(h, k), eta_multiplier(matrix_hk(h, k)).exponent))
    return tuple(out)


def kloosterman_f_row(k: int, n: int) -> np.ndarray:
    """K_k(n, r) for r = 0..2k-1 from exact phases, sharing the multiplier work across r."""
    vals = np.empty(2 * k, dtype=complex)
    data = _farey_data(k)
    for r in range(2 * k):
        lead = Fraction(3, 8) + Fraction(r, 2)
        q = 12 * r * r + 12 * r + 1
        terms = [UnityPower(lead - nu + Fraction(-(24 * n + 1) * h + q * hp, 24 * k)).value()
                 for h, hp, nu in data]
        vals[r] = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return vals


def _alpha_f_k_term(n: int, k: int, tol: float) -> complex:
    K = kloosterman_f_row(k, n)
    r = np.arange(2 * k)
    beta = math.pi * math.sqrt(24 * n + 1) / (3 * math.sqrt(2) * k)

    def integrand(x):
        one_m = np.clip(1.0 - x * x, 0.0, None)
        radial = one_m ** 0.75 * bessel_i32_array(beta * np.sqrt(one_m))
        cot = 1.0 / np.tan(math.pi / (2 * k) * (x[:, None] / SQRT6 - r - 0.5))
        return radial * (cot @ K)

    res = quad_finite(integrand, -1.0, 1.0, tol)
    return complex(res.value) / (k * k)


def _alpha_f_prefactor(n: int) -> float:
    return math.pi / (2 ** 0.75 * math.sqrt(3) * (24 * n + 1) ** 0.75)


def alpha_f_breakdown(n: int, cfg: RademacherConfig = RademacherConfig()) -> TermBreakdown:
    if int(n) != n or n < 0:
        raise DomainError("n must be a non-negative integer")
    pref = _alpha_f_prefactor(n)
    return TermBreakdown.from_terms(pref * _alpha_f_k_term(n, k, cfg.quad_tol)
                                    for k in range(1, cfg.kmax + 1))


def _check_imag(bd: TermBreakdown, tol: float, what: str):
    scale = max(1.0, abs(bd.total.real))
    if abs(bd.total.imag) > 10 * tol * scale:
        raise ConvergenceError(
            f"{what}: imaginary residue {bd.total.imag:.3g} exceeds 10*quad_tol (phase error?)")


def alpha_f_formula(n: int, cfg: RademacherConfig = RademacherConfig()) -> tuple[float, TermBreakdown]:
    """Truncated exact formula for the coefficient of q^(n + 1/24) in f."""
    bd = alpha_f_breakdown(n, cfg)
    _check_imag(bd, cfg.quad_tol, "alpha_f")
    return bd.total.real, bd


def alpha_g_formula(n: int, cfg: RademacherConfig = RademacherConfig()) -> tuple[float, TermBreakdown]:
    """Truncated Rademacher series for the coefficients of 1/eta^2 (n >= 1)."""
    if int(n) != n or n < 1:
        raise DomainError("alpha_g_formula needs n >= 1 (12n - 1 must be positive)")
    m = 12 * n - 1
    terms = []
    for k in range(1, cfg.kmax + 1):
        bes = bessel_i(2, math.pi * math.sqrt(m) / (3 * k))
        terms.append(2 * math.pi / m * kloosterman_g(k, n) / k * bes)
    bd = TermBreakdown.from_terms(terms)
    _check_imag(bd, 1e-9, "alpha_g")
    return bd.total.real, bd


def u_rademacher(n: int, cfg: RademacherConfig = RademacherConfig()) -> UnimodalApprox:
    if int(n) != n or n < 1:
        raise DomainError("u_rademacher needs n >= 1")
    g, _ = alpha_g_formula(n, cfg)
    f, _ = alpha_f_formula(n, cfg)
    approx = g - f
    rounded = int(math.floor(approx + 0.5))
    return UnimodalApprox(int(n), approx, rounded, abs(approx - rounded) > cfg.round_margin, g, f)


def auluck_main(n: int) -> float:
    """Leading asymptotic e^(2 pi sqrt(n/3)) / (8 3^(3/4) n^(5/4))."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return math.exp(2 * math.pi * math.sqrt(n / 3)) / (8 * 3 ** 0.75 * n ** 1.25)


def coefficient_table(kmax_list=TABLE_KMAX, rows=TABLE_ROWS, quad_tol: float = 1e-10) -> dict:
    """alpha_f_formula at every (n, kmax) cell; one breakdown per row is truncated per column."""
    kmax_list = tuple(kmax_list)
    cfg = RademacherConfig(kmax=max(kmax_list), quad_tol=quad_tol)
    out = {}
    for n in rows:
        bd = alpha_f_breakdown(n, cfg)
        for km in kmax_list:
            v = bd.partial(km)
            if abs(v.imag) > 10 * quad_tol * max(1.0, abs(v.real)):
                raise ConvergenceError(f"alpha_f({n}) at kmax={km}: imaginary residue {v.imag:.3g}")
            out[(n, km)] = v.real
    return out
