"""Residuals of the transformation laws, each side evaluated independently."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from ..errors import BranchCutError, DomainError
from ..modular import SL2Z, eta_multiplier
from ..numeric import erf_times_exp, quad_finite, sqrt_principal
from ..qseries import coeffs_f, coeffs_g
from .eichler import GUARD, eichler_eta3, eichler_f
from .false_theta import F_false, psi_false, psi_hat
from .lattice import LatticePair, big_psi_hat, chi, dual_cosets
from .multiplier import multiplier_psi


def _sgn(x):
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Jacobi laws of the completed lattice sum
# ---------------------------------------------------------------------------

def verify_jacobi_T(lat: LatticePair, z, tau, w, tol: float = 1e-12) -> float:
    lhs = big_psi_hat(lat, z, complex(tau) + 1, complex(w) + 1, tol / 10)
    phase = cmath.exp(2j * math.pi * float(lat.Q(lat.base_point())))
    return abs(lhs - phase * big_psi_hat(lat, z, tau, w, tol / 10))


def verify_jacobi_S(lat: LatticePair, z, tau, w, tol: float = 1e-12) -> float:
    tau, w = complex(tau), complex(w)
    if abs(w - tau) < GUARD:
        raise BranchCutError("tau = w is the branch point of the completion")
    z = np.asarray(z, dtype=complex).reshape(lat.rank)
    lhs = big_psi_hat(lat, z / tau, -1 / tau, -1 / w, tol / 10)
    cosets = dual_cosets(lat)
    mu = np.array([float(x) for x in lat.shift])
    total = 0j
    for nu in cosets:
        nu_vec = np.array([float(x) for x in nu.rep])
        total += (cmath.exp(-2j * math.pi * float(lat.B(mu, nu_vec)))
                  * big_psi_hat(lat.with_shift(nu.rep), z, tau, w, tol / 10))
    ell = np.array(lat.charvec, dtype=float)
    qz = 0.5 * complex(z @ lat.A @ z)
    pref = (chi(tau, w) * sqrt_principal(-1j * tau) ** lat.rank / math.sqrt(len(cosets))
            * cmath.exp(2j * math.pi * qz / tau - 1j * math.pi * float(lat.Q(ell))))
    return abs(lhs - pref * total)


def verify_jacobi_elliptic(lat: LatticePair, z, tau, w, m, r, tol: float = 1e-12) -> float:
    """Elliptic shift z -> z + m tau + r.

    The shifted sum is larger by |q^(-Q(m)) e^(-2 pi i B(m, z))|, so the
    residual is measured after dividing that factor back out.
    """
    z = np.asarray(z, dtype=complex).reshape(lat.rank)
    m = np.asarray(m, dtype=float)
    r = np.asarray(r, dtype=float)
    tau = complex(tau)
    lhs = big_psi_hat(lat, z + m * tau + r, tau, w, tol / 10)
    qmr = int(round(float(2 * lat.Q(m + r))))
    phase = (-1) ** qmr * cmath.exp(-2j * math.pi * (tau * float(lat.Q(m)) + complex(m @ lat.A @ z)))
    return abs(lhs / phase - big_psi_hat(lat, z, tau, w, tol / 10))


def verify_eta_law(M: SL2Z, z, tau, w, tol: float = 1e-12) -> float:
    """Rank-one law psi-hat(z/(c tau+d); M tau, M w) = chi(M) nu_eta(M)^3 (c tau+d)^(1/2) e^(pi i c z^2/(c tau+d)) psi-hat."""
    if M.c <= 0:
        raise DomainError("this check uses the c > 0 eta multiplier")
    tau, w, z = complex(tau), complex(w), complex(z)
    j = M.automorphy(tau)
    lhs = psi_hat(z / j, M.act(tau), M.act(w), tol / 10)
    rhs = (chi(tau, w, M) * (eta_multiplier(M) ** 3).value() * sqrt_principal(j)
           * cmath.exp(1j * math.pi * M.c * z * z / j) * psi_hat(z, tau, w, tol / 10))
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Eichler-integral identities
# ---------------------------------------------------------------------------

def verify_completion_limit(tau, w, tol: float = 1e-11) -> float:
    """psi-hat(tau, w) - psi(tau) + i * integral_w^(tau + i inf + eps) eta^3 / sqrt(i (z - tau))."""
    return abs(psi_hat(0, tau, w, tol / 10) - psi_false(0, tau, tol / 10)
               + 1j * eichler_eta3(complex(w), tau, tol / 10))


def verify_obstruction(M: SL2Z, tau, tol: float = 1e-10, order: int = 96) -> float:
    """Residual of f(tau) = e^(pi i/4) nu_eta(M)^-1 sqrt(-i(c tau+d)) (f(M tau) - g(M tau) E_{a/c}(M tau) / 2)."""
    if M.c <= 0:
        raise DomainError("needs c > 0")
    if order < 64:
        raise DomainError("q-series order must be at least 64")
    tau = complex(tau)
    f = coeffs_f(order)
    g = coeffs_g(order)
    mt = M.act(tau)
    E = eichler_eta3(Fraction(M.a, M.c), mt, tol / 10)
    rhs = (cmath.exp(1j * math.pi / 4) / eta_multiplier(M).value()
           * sqrt_principal(-1j * M.automorphy(tau)) * (f.evaluate(mt) - 0.5 * g.evaluate(mt) * E))
    return abs(f.evaluate(tau) - rhs)


def verify_integral_representation(j: int, N: int, tau, tol: float = 1e-12) -> float:
    """|F_{j,N}(tau) + i sqrt(2N) integral_tau^(i inf) f_{j,N} / sqrt(-i(z - tau))|."""
    return abs(F_false(j, N, tau, tol / 10) + 1j * eichler_f(j, N, complex(tau), tau, tol / 10))


def quantum_lhs(j: int, N: int, M: SL2Z, tau, tol: float = 1e-13) -> complex:
    """F_{j,N}(tau) - sgn(c tau_1 + d) (c tau + d)^(-1/2) sum_r psi_{j,r}(M^-1) F_{r,N}(M tau)."""
    tau = complex(tau)
    j_aut = M.automorphy(tau)
    if M.c != 0 and abs(tau.real + M.d / M.c) <= GUARD:
        raise BranchCutError("singular configuration: Re(tau) = -d/c")
    Minv = M.inverse()
    mt = M.act(tau)
    s = sum(multiplier_psi(j, r, N, Minv) * F_false(r, N, mt, tol) for r in range(1, N))
    return F_false(j, N, tau, tol) - _sgn(M.c * tau.real + M.d) / sqrt_principal(j_aut) * s


def quantum_integral(j: int, N: int, M: SL2Z, tau, tol: float = 1e-12) -> complex:
    """-i sqrt(2N) integral_{-d/c}^{i inf} f_{j,N}(z) / sqrt(-i(z - tau)); zero when c = 0."""
    if M.c == 0:
        return 0j
    return -1j * eichler_f(j, N, Fraction(-M.d, M.c), tau, tol)


def quantum_residual(j: int, N: int, M: SL2Z, tau, tol: float = 1e-10) -> float:
    return abs(quantum_lhs(j, N, M, tau, tol / 10) - quantum_integral(j, N, M, tau, tol / 10))


# ---------------------------------------------------------------------------
# Fourier self-duality of the erf-weighted Gaussian (rank one)
# ---------------------------------------------------------------------------

def erf_gaussian(x, tau, w):
    """sqrt(i (w - tau)) erf(-i sqrt(pi i (w - tau)) x) e^(pi i tau x^2)."""
    x = np.asarray(x, dtype=float)
    root = sqrt_principal(1j * (complex(w) - complex(tau)))
    u = -1j * math.sqrt(math.pi) * root * x
    return root * erf_times_exp(u, 1j * math.pi * complex(tau) * x * x)


def verify_selfdual(tau, w, x: float, tol: float = 1e-12) -> float:
    """|Fourier transform of the erf-Gaussian at x - e^(pi i/4) sqrt(w) times its (-1/tau, -1/w) version|."""
    tau, w = complex(tau), complex(w)
    decay = math.pi * min(tau.imag, w.imag)
    Y = math.sqrt((math.log(1 / tol) + 10) / decay)
    ft = quad_finite(lambda y: erf_gaussian(y, tau, w) * np.exp(-2j * math.pi * x * y), -Y, Y, tol / 10).value
    rhs = cmath.exp(1j * math.pi / 4) * sqrt_principal(w) * complex(erf_gaussian(x, -1 / tau, -1 / w))
    return abs(ft - rhs)
