"""Eichler-type integrals along cut-avoiding paths.

Two kernels appear:

* ``eta^3(z) / sqrt(i (z - tau))``, whose square root is cut along the ray
  going straight *up* from tau. Its integrals end at ``tau + i inf + eps``,
  i.e. on a vertical ray just to the right of that cut.
* ``f_{j,N}(z) / sqrt(-i (z - tau))``, cut along the ray going straight
  *down* from tau; these integrals run vertically up to i inf.

Paths are polylines followed by a final vertical ray. A path that starts at
a rational cusp begins slightly above the real axis, at a height where the
neglected piece is provably below tol/10 (the integrand vanishes to infinite
order at every cusp).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import wofz

from ..errors import BranchCutError, ConvergenceError, DomainError
from ..numeric import quad_finite, quad_halfline_decay, sqrt_principal
from .false_theta import eta_cubed, f_unary

GUARD = 1e-6


@dataclass(frozen=True)
class EichlerPath:
    """Straight segments (start, end) followed by the ray ray_start + i [0, inf)."""

    segments: tuple
    ray_start: complex

    def points(self):
        pts = [s for s, _ in self.segments] + [self.ray_start]
        return pts


def _cusp_floor(denominator: int, kappa: float, amplitude: float, tol: float,
                extra: float = 1.0) -> float:
    """Height y0 with y0 * bound(y0) <= tol/10 for the cusp bound
    amplitude * (|c| y)^(-3/2) exp(-kappa / (c^2 y)) * extra."""
    c = abs(denominator)

    def integral_bound(y):
        return y * extra * amplitude * (c * y) ** -1.5 * math.exp(-kappa / (c * c * y))

    hi = 2 * kappa / (3 * c * c)  # the bound increases up to here
    lo = 1e-9
    target = tol / 10
    if integral_bound(hi) <= target:
        return hi
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if integral_bound(mid) <= target:
            lo = mid
        else:
            hi = mid
        if hi / lo < 1.0001:
            break
    return lo


def _as_start(lower):
    """Split a lower limit into (complex point, cusp denominator or None)."""
    if isinstance(lower, (int, Fraction)):
        fr = Fraction(lower)
        return complex(float(fr), 0.0), fr.denominator
    z = complex(lower)
    if z.imag <= 0:
        raise DomainError("a non-rational lower limit must lie in the upper half plane")
    return z, None


def integrate_path(F, path: EichlerPath, decay_rate: float, tol: float) -> complex:
    """Integral of the vectorized integrand F along ``path``."""
    total = 0j
    n_pieces = len(path.segments) + 1
    for p, q in path.segments:
        d = q - p
        res = quad_finite(lambda t, p=p, d=d: F(p + d * t) * d, 0.0, 1.0, tol / n_pieces)
        total += res.value
    r0 = path.ray_start
    res = quad_halfline_decay(lambda v: 1j * F(r0 + 1j * v), tol / n_pieces, decay_rate)
    return total + res.value


# ---------------------------------------------------------------------------
# eta^3 kernel, cut upward
# ---------------------------------------------------------------------------

def eta3_path(start: complex, tau: complex, floor: float = 0.0) -> EichlerPath:
    """Path from ``start`` to tau + i inf + eps avoiding the upward cut above tau.

    Starting to the right of tau the path is a single vertical ray. Otherwise
    it drops to height min(Im start, Im tau / 2), passes below tau to
    Re tau + Im tau / 2 and then goes up.
    """
    p0 = start + 1j * floor if start.imag == 0 else start
    if p0.real > tau.real + GUARD:
        return EichlerPath((), p0)
    if abs(p0.real - tau.real) <= GUARD and p0.imag >= tau.imag - GUARD:
        raise BranchCutError("start point lies on the branch cut above tau")
    y_low = tau.imag / 2 if start.imag == 0 else min(p0.imag, tau.imag / 2)
    if y_low <= floor:
        raise BranchCutError("tau is too close to the real axis for the cusp cutoff")
    segs = []
    p1 = complex(p0.real, y_low)
    if abs(p1 - p0) > 0:
        segs.append((p0, p1))
    p2 = complex(tau.real + tau.imag / 2, y_low)
    segs.append((p1, p2))
    return EichlerPath(tuple(segs), p2)


def eichler_eta3(lower, tau, tol: float = 1e-12) -> complex:
    """E(tau) = integral of eta(z)^3 / sqrt(i (z - tau)) from ``lower`` to tau + i inf + eps.

    ``lower`` is a rational cusp (int or Fraction) or a point of the upper
    half plane.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Im(tau) must be positive")
    start, denom = _as_start(lower)
    floor = 0.0
    if denom is not None:
        dist = max(abs(start - tau) - tau.imag / 2, tau.imag / 2)
        floor = _cusp_floor(denom, math.pi / 4, 3.0, tol, extra=dist ** -0.5)
    path = eta3_path(start, tau, floor)

    def F(z):
        return eta_cubed(z) / sqrt_principal(1j * (z - tau))

    return integrate_path(F, path, math.pi / 4, tol)


def _richardson(values):
    """Eliminate successive powers 1/N0, 1/N0^2, ... from partial sums at doubling N0."""
    table = [list(values)]
    for p in range(1, len(values)):
        prev = table[-1]
        table.append([(2 ** p * prev[i + 1] - prev[i]) / (2 ** p - 1) for i in range(len(prev) - 1)])
    return table


def eichler_eta3_erf_series(rho, V, tol: float = 1e-8, max_doublings: int = 22) -> complex:
    """E_rho(rho + i V) from its erf series, for rational rho and Re V > 0.

    With s = n + 1/2 the series is sum_n (-1)^n e^(pi i s^2 rho) sgn(s) w(|s| sqrt(pi V)),
    w the Faddeeva function. It converges only conditionally, so it is summed
    symmetrically over |s| < N0 with N0 a multiple of the phase period 2k,
    doubled, and Richardson-extrapolated in 1/N0.
    """
    rho = Fraction(rho)
    V = complex(V)
    if V.real <= 0:
        raise DomainError("Re(V) must be positive")
    k = rho.denominator
    root = np.sqrt(np.pi * V)
    N0 = 2 * k * max(1, math.ceil(64 / (2 * k)))
    sums = []
    done = 0
    acc = 0j
    prev_best = None
    for _ in range(max_doublings):
        n = np.arange(done, N0)
        s = n + 0.5
        # rho s^2 mod 2 from exact integers: s^2 = n^2 + n + 1/4
        num = (rho.numerator * (n * n + n)) % (2 * rho.denominator)
        phase = np.exp(1j * np.pi * (num / rho.denominator + float(rho) / 4))
        sign = np.where(n % 2 == 0, 1.0, -1.0)
        acc += 2 * complex(np.sum(sign * phase * wofz(s * root)))
        done = N0
        sums.append(acc)
        if len(sums) >= 3:
            table = _richardson(sums[-6:])
            best = table[-1][-1]
            if prev_best is not None and abs(best - prev_best) <= tol * max(1.0, abs(best)):
                return best
            prev_best = best
        N0 *= 2
    raise ConvergenceError("erf series did not settle within the doubling budget")


def estar_principal(hprime: int, k: int, d: float, V, tol: float = 1e-12) -> complex:
    """Principal piece -i e^(2 pi d V)/(2k) sum_r (-1)^r e^(pi i (r+1/2)^2 h'/k) I_r,
    I_r = integral over |x| <= sqrt(2d) of cot(pi (x - r - 1/2)/(2k)) e^(-pi V x^2)."""
    if k < 1 or math.gcd(hprime, k) != 1:
        raise DomainError("need k >= 1 and gcd(h', k) = 1")
    if not 0 <= d < 0.125:
        raise DomainError("d must lie in [0, 1/8)")
    V = complex(V)
    if d == 0:
        return 0j
    r = np.arange(2 * k)
    rho = Fraction(hprime, k)
    num = (rho.numerator * (r * r + r)) % (2 * k)
    weights = np.where(r % 2 == 0, 1.0, -1.0) * np.exp(1j * np.pi * (num / k + float(rho) / 4))
    X = math.sqrt(2 * d)

    def integrand(x):
        x = np.asarray(x)
        cot = 1.0 / np.tan(np.pi / (2 * k) * (x[..., None] - r - 0.5))
        return (cot @ weights) * np.exp(-np.pi * V * x * x)

    val = quad_finite(integrand, -X, X, tol).value
    return -1j * np.exp(2 * np.pi * d * V) / (2 * k) * val


# ---------------------------------------------------------------------------
# f_{j,N} kernel, cut downward
# ---------------------------------------------------------------------------

def eichler_f(j: int, N: int, lower, tau, tol: float = 1e-12) -> complex:
    """sqrt(2N) * integral of f_{j,N}(z) / sqrt(-i (z - tau)) along the vertical path from ``lower`` to i inf.

    ``lower`` is a rational cusp, a point of the upper half plane, or tau
    itself. The path may not meet the cut running down from tau.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Im(tau) must be positive")
    start, denom = _as_start(lower)
    jj = j % (2 * N)
    n_min = min(jj, 2 * N - jj)
    if n_min == 0:
        return 0j
    same_line = abs(start.real - tau.real) <= GUARD
    if same_line and start.imag < tau.imag - GUARD:
        raise BranchCutError("vertical path from below tau crosses the branch cut of sqrt(-i(z - tau))")
    if same_line and start != tau and abs(start - tau) <= GUARD:
        raise BranchCutError("lower limit within the guard band of tau")
    floor = 0.0
    if denom is not None:
        floor = _cusp_floor(denom, math.pi / (2 * N), 4.0 * math.sqrt(N), tol,
                            extra=abs(start.real - tau.real) ** -0.5)
    rate = math.pi * n_min ** 2 / (2 * N)
    if start == tau:
        # integrable v^(-1/2) singularity at the branch point; written in v
        # directly so that z - tau never rounds to zero
        res = quad_halfline_decay(lambda v: 1j * f_unary(j, N, tau + 1j * v) / np.sqrt(v), tol, rate)
        return math.sqrt(2 * N) * res.value

    def F(z):
        return f_unary(j, N, z) / sqrt_principal(-1j * (z - tau))

    val = integrate_path(F, EichlerPath((), start + 1j * floor), rate, tol)
    return math.sqrt(2 * N) * val
