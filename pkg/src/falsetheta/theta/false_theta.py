"""Rank-one false theta functions, their completions and the unary thetas f_{j,N}.

These are direct evaluators, written independently of the lattice engine in
:mod:`falsetheta.theta.lattice` so that the two can be checked against each
other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceError, DomainError
from ..numeric import erf_times_exp, sqrt_principal

MAX_TERMS = 200_000


@dataclass(frozen=True)
class FalseThetaParams:
    j: int
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise DomainError("N must be >= 2")
        if not 1 <= self.j <= self.N - 1:
            raise DomainError(f"j must lie in 1..{self.N - 1}, got {self.j}")


def gaussian_tail_cutoff(a: float, tol: float, power: int = 0, center: float = 0.0,
                         growth: float = 1.0) -> int:
    """Smallest M with sum_{|x| > M} growth * (1+|x|)^power e^{-a x^2} <= tol.

    The sum runs over any unit-spaced set of points x; the bound follows from
    a ratio test on the one-sided tails, doubled for the two sides.
    """
    if a <= 0:
        raise DomainError("Gaussian decay rate must be positive")
    M = max(1, int(math.ceil(abs(center))) + 1)
    for _ in range(MAX_TERMS):
        ratio = ((M + 2) / (M + 1)) ** power * math.exp(-a * (2 * M + 1))
        if ratio < 1:
            first = growth * (M + 2) ** power * math.exp(-a * (M + 1) ** 2)
            if 2 * first / (1 - ratio) <= tol:
                return M
        M += 1
    raise ConvergenceError("Gaussian tail bound unattainable within the term budget")


def _tau_check(tau):
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Im(tau) must be positive")
    return tau


def _fsum_c(terms):
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


# ---------------------------------------------------------------------------
# psi and its completion
# ---------------------------------------------------------------------------

def _psi_terms(z, tau, tol, erf_growth=0.0):
    """Half-integers s = n + 1/2 needed for a tail below tol, plus their log-magnitudes."""
    t2 = tau.imag
    y = z.imag / t2
    # |q^{s^2/2} zeta^s| = exp(-pi t2 (s + y)^2 + pi t2 y^2)
    a = math.pi * (t2 - erf_growth)
    M = gaussian_tail_cutoff(a, tol / 2, center=0.0, growth=2 * math.exp(math.pi * t2 * y * y))
    n = np.arange(-M - math.ceil(abs(y)) - 1, M + math.ceil(abs(y)) + 1)
    s = n + 0.5
    return n, s, y


def psi_false(z, tau, tol: float = 1e-14) -> complex:
    """psi(z; tau) = i sum_n sgn(n + 1/2) (-1)^n q^((n+1/2)^2/2) zeta^(n+1/2)."""
    tau = _tau_check(tau)
    z = complex(z)
    n, s, _ = _psi_terms(z, tau, tol)
    terms = np.sign(s) * (-1.0) ** n * np.exp(1j * np.pi * tau * s * s + 2j * np.pi * z * s)
    return 1j * _fsum_c(terms)


def psi_hat(z, tau, w, tol: float = 1e-14) -> complex:
    """Completion of psi with erf(-i sqrt(pi i (w - tau)) (n + 1/2 + Im z / Im tau)) in place of the sign."""
    tau = _tau_check(tau)
    w = complex(w)
    if w.imag <= 0:
        raise DomainError("Im(w) must be positive")
    z = complex(z)
    # when Im w < Im tau the erf grows like exp(pi (tau2 - w2) s^2)
    growth = max(0.0, tau.imag - w.imag)
    n, s, y = _psi_terms(z, tau, tol / 2, erf_growth=growth)
    root = sqrt_principal(np.pi * 1j * (w - tau))
    u = -1j * root * (s + y)
    log_gauss = 1j * np.pi * tau * s * s + 2j * np.pi * z * s + 1j * np.pi * n
    return 1j * _fsum_c(erf_times_exp(u, log_gauss))


# ---------------------------------------------------------------------------
# F_{j,N}, f_{j,N} and the completion F-hat
# ---------------------------------------------------------------------------

def _residue_class(j, N, M):
    """Integers n = j (mod 2N) with |n| <= M."""
    start = j - 2 * N * ((j + M) // (2 * N))
    n = np.arange(start, M + 1, 2 * N)
    return n[np.abs(n) <= M]


def F_false(j: int, N: int, tau, tol: float = 1e-14) -> complex:
    """F_{j,N}(tau) = sum_{n = j mod 2N} sgn(n) q^(n^2/(4N)) for any integer j."""
    tau = _tau_check(tau)
    if N < 2:
        raise DomainError("N must be >= 2")
    M = gaussian_tail_cutoff(math.pi * tau.imag / (2 * N), tol)
    n = _residue_class(j, N, M)
    return _fsum_c(np.sign(n) * np.exp(2j * np.pi * tau * n * n / (4 * N)))


def f_unary(j: int, N: int, tau, tol: float = 1e-14):
    """f_{j,N}(tau) = (1/2N) sum_{n = j mod 2N} n q^(n^2/(4N)); ``tau`` may be an array."""
    tau_arr = np.asarray(tau, dtype=complex)
    if np.any(tau_arr.imag <= 0):
        raise DomainError("Im(tau) must be positive")
    if N < 2:
        raise DomainError("N must be >= 2")
    t2 = float(np.min(tau_arr.imag))
    M = gaussian_tail_cutoff(math.pi * t2 / (2 * N), tol * 2 * N, power=1)
    n = _residue_class(j, N, M)
    terms = n * np.exp(2j * np.pi * np.multiply.outer(tau_arr, n * n) / (4 * N))
    val = terms.sum(axis=-1) / (2 * N)
    return complex(val) if val.ndim == 0 else val


def F_hat(j: int, N: int, tau, w, tol: float = 1e-14) -> complex:
    """Completion sum_{n = j mod 2N} erf(-i sqrt(pi i (w - tau)) n / sqrt(2N)) q^(n^2/(4N))."""
    tau = _tau_check(tau)
    w = complex(w)
    if w.imag <= 0:
        raise DomainError("Im(w) must be positive")
    a = math.pi * min(tau.imag, w.imag) / (2 * N)
    M = gaussian_tail_cutoff(a, tol / 2)
    n = _residue_class(j, N, M)
    u = -1j * sqrt_principal(np.pi * 1j * (w - tau)) * n / math.sqrt(2 * N)
    return _fsum_c(erf_times_exp(u, 2j * np.pi * tau * n * n / (4 * N)))


def eta_cubed(tau, tol: float = 1e-15):
    """eta(tau)^3 = sum_{n>=0} (-1)^n (2n+1) q^((2n+1)^2/8); ``tau`` may be an array."""
    tau_arr = np.asarray(tau, dtype=complex)
    if np.any(tau_arr.imag <= 0):
        raise DomainError("Im(tau) must be positive")
    t2 = float(np.min(tau_arr.imag))
    M = gaussian_tail_cutoff(math.pi * t2 / 4, tol, power=1)
    m = np.arange(1, M + 2, 2)
    sign = np.where((m // 2) % 2 == 0, 1.0, -1.0)
    terms = sign * m * np.exp(2j * np.pi * np.multiply.outer(tau_arr, m * m) / 8)
    val = terms.sum(axis=-1)
    return complex(val) if val.ndim == 0 else val
