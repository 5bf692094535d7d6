"""Precision-controlled special functions and quadrature.

Scalar routines (:func:`erf_complex`, :func:`bessel_i`) run in mpmath at the
precision of a :class:`PrecisionContext` and hand back Python ``float`` /
``complex`` in the default 15-digit mode, mpmath numbers in extended mode.

The ``*_array`` helpers are float64 numpy kernels for the hot loops of the
lattice sums and the Rademacher integrals.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath as mp
import numpy as np
from scipy.special import wofz

from .errors import ConvergenceError, DomainError

ERF_SAFE_RADIUS = 50.0
_GUARD_DIGITS = 10


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in significant decimal digits.

    ``digits > 15`` switches the scalar routines and the quadrature engine to
    mpmath arithmetic ("extended mode").
    """

    digits: int = 15
    default_tol: float | None = None

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 15:
            raise DomainError(f"digits must be an integer >= 15, got {self.digits!r}")
        floor = 10.0 ** (2 - self.digits)
        if self.default_tol is None:
            object.__setattr__(self, "default_tol", floor)
        elif not self.default_tol >= floor:
            raise DomainError(f"default_tol must be >= {floor:g} at {self.digits} digits")

    @property
    def extended(self) -> bool:
        return self.digits > 15

    def workdps(self, extra: int = _GUARD_DIGITS):
        return mp.workdps(self.digits + extra)

    def out(self, x):
        """Convert an mpmath result to the context's public number type."""
        if self.extended:
            return x
        try:
            v = complex(x) if isinstance(x, mp.mpc) else float(x)
        except OverflowError:
            v = math.inf
        if not cmath.isfinite(v):
            raise DomainError("result overflows float64; use an extended-precision context")
        return v


DEFAULT = PrecisionContext()


def check_finite(x, what: str = "value"):
    """Raise if ``x`` (scalar or array) has a NaN or infinite component."""
    if isinstance(x, (mp.mpf, mp.mpc)):
        ok = mp.isfinite(x)
    else:
        ok = bool(np.all(np.isfinite(x)))
    if not ok:
        raise ConvergenceError(f"non-finite {what}")
    return x


# ---------------------------------------------------------------------------
# elementary
# ---------------------------------------------------------------------------

def sqrt_principal(z):
    """Principal square root, argument in (-pi/2, pi/2].

    The cut runs along the negative real axis; points on the cut map to the
    positive imaginary axis regardless of the sign of a zero imaginary part.
    Works on scalars, mpmath numbers and numpy arrays.
    """
    if isinstance(z, (mp.mpf, mp.mpc)):
        z = mp.mpc(z)
        if z.imag == 0:
            z = mp.mpc(z.real, 0)
        return mp.sqrt(z)
    if np.ndim(z):
        return np.sqrt(np.asarray(z, dtype=complex) + 0j)
    z = complex(z)
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


# ---------------------------------------------------------------------------
# error function
# ---------------------------------------------------------------------------

def _erf_maclaurin(z, digits):
    r2 = float(abs(z)) ** 2
    guard = int(r2 / math.log(10)) + 12
    with mp.workdps(digits + guard):
        z = mp.mpc(z)
        mz2 = -z * z
        term = z
        total = z
        eps = mp.mpf(10) ** (-(digits + guard - 2))
        k = 0
        while True:
            k += 1
            term = term * mz2 / k
            piece = term / (2 * k + 1)
            total += piece
            if k > r2 and abs(piece) <= eps * abs(total):
                break
            if k > 100000:
                raise ConvergenceError("erf Maclaurin series did not converge")
        return 2 * total / mp.sqrt(mp.pi)


def _erfc_contfrac(z, digits):
    """erfc for Re(z) > 0 via the Laplace continued fraction (modified Lentz)."""
    with mp.workdps(digits + _GUARD_DIGITS):
        z = mp.mpc(z)
        tiny = mp.mpf(10) ** (-(mp.mp.dps * 4))
        eps = mp.mpf(10) ** (-(digits + 4))
        f = z
        C = z
        D = mp.mpc(0)
        m = 0
        while True:
            m += 1
            a = mp.mpf(m) / 2
            D = z + a * D
            if D == 0:
                D = tiny
            D = 1 / D
            C = z + a / C
            if C == 0:
                C = tiny
            delta = C * D
            f *= delta
            if abs(delta - 1) < eps:
                break
            if m > 200000:
                raise ConvergenceError("erfc continued fraction did not converge")
        return mp.exp(-z * z) / (mp.sqrt(mp.pi) * f)


def erf_complex(z, ctx: PrecisionContext = DEFAULT):
    """Error function of a complex argument, |z| <= 50.

    Maclaurin series (with guard digits covering its cancellation) inside
    |z| <= 4 and near the imaginary axis; the erfc continued fraction for
    |Re z| > 3 outside that disc.
    """
    with ctx.workdps():
        zz = mp.mpc(z)
        r = abs(zz)
        if not mp.isfinite(r):
            raise DomainError("erf_complex needs a finite argument")
        if r > ERF_SAFE_RADIUS:
            raise DomainError(f"|z| = {float(r):.4g} exceeds the safe range {ERF_SAFE_RADIUS}")
        if r == 0:
            return ctx.out(mp.mpc(0))
        if r <= 4 or abs(zz.real) <= 3:
            val = _erf_maclaurin(zz, ctx.digits)
        else:
            sign = 1 if zz.real > 0 else -1
            val = sign * (1 - _erfc_contfrac(sign * zz, ctx.digits))
        return ctx.out(check_finite(mp.mpc(val), "erf"))


def erf_times_exp(u, log_x):
    """``erf(u) * exp(log_x)`` for arrays, without overflow.

    Uses erf(u) = s * (1 - exp(-u^2) w(s i u)) with the Faddeeva function w and
    s = sign(Re u), so that w is only evaluated in the closed upper half
    plane where |w| <= 1. The product stays finite whenever the true value
    does.
    """
    u = np.asarray(u, dtype=complex)
    log_x = np.asarray(log_x, dtype=complex)
    s = np.where(u.real >= 0, 1.0, -1.0)
    return s * (np.exp(log_x) - wofz(s * 1j * u) * np.exp(log_x - u * u))


# ---------------------------------------------------------------------------
# I-Bessel
# ---------------------------------------------------------------------------

_BESSEL_ORDERS = {Fraction(3, 2): mp.mpf(3) / 2, Fraction(2): mp.mpf(2)}


def bessel_i(order, x, ctx: PrecisionContext = DEFAULT):
    """Modified Bessel function I_order(x) for order 3/2 or 2, x >= 0.

    Ascending series sum (x/2)^(2m+order) / (m! Gamma(m+order+1)); every term
    is positive so no guard digits beyond the default are needed. I(0) = 0.
    """
    key = Fraction(order).limit_denominator(8)
    if key not in _BESSEL_ORDERS or abs(float(order) - float(key)) > 1e-14:
        raise DomainError(f"bessel_i supports orders 3/2 and 2, got {order!r}")
    if x < 0:
        raise DomainError("bessel_i needs x >= 0")
    if x == 0:
        return ctx.out(mp.mpf(0))
    nu = _BESSEL_ORDERS[key]
    with ctx.workdps():
        half = mp.mpf(x) / 2
        h2 = half * half
        term = half ** nu / mp.gamma(nu + 1)
        total = term
        eps = mp.eps
        m = 0
        while True:
            m += 1
            term = term * h2 / (m * (m + nu))
            total += term
            if term <= eps * total:
                break
        return ctx.out(check_finite(total, "bessel_i"))


def bessel_i32_closed(x, ctx: PrecisionContext = DEFAULT):
    """I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)."""
    with ctx.workdps():
        x = mp.mpf(x)
        return ctx.out(mp.sqrt(2 / (mp.pi * x)) * (mp.cosh(x) - mp.sinh(x) / x))


_I32_SERIES = [1.0 / (math.factorial(m) * math.gamma(m + 2.5)) for m in range(12)]


def bessel_i32_array(x):
    """Vectorized float64 I_{3/2} for x >= 0 (series below 0.5, closed form above)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    small = x < 0.5
    if np.any(small):
        xs = x[small] / 2
        acc = np.zeros_like(xs)
        p = np.ones_like(xs)
        h2 = xs * xs
        for c in _I32_SERIES:
            acc += c * p
            p = p * h2
        out[small] = acc * xs ** 1.5
    big = ~small
    if np.any(big):
        xb = x[big]
        if np.any(xb > 700):
            raise DomainError("bessel_i32_array argument overflows float64")
        out[big] = np.sqrt(2 / (np.pi * xb)) * (np.cosh(xb) - np.sinh(xb) / xb)
    return out


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


_TMAX_FLOAT = 4.5
_MAX_LEVEL_FLOAT = 12
_MAX_LEVEL_MP = 10


def _ts_float_nodes(level):
    """tanh-sinh abscissae added at ``level`` as (signed distance, weight)."""
    if level == 0:
        t = np.arange(-int(_TMAX_FLOAT), int(_TMAX_FLOAT) + 1, dtype=float)
    else:
        h = 2.0 ** -level
        pos = np.arange(1, int(_TMAX_FLOAT / h) + 1, 2, dtype=float) * h
        t = np.concatenate([-pos[::-1], pos])
    u = 0.5 * np.pi * np.sinh(t)
    au = np.abs(u)
    # distance of tanh(u) from the nearer endpoint of [-1, 1]
    dist = 2.0 / (1.0 + np.exp(2.0 * au))
    w = 0.5 * np.pi * np.cosh(t) / np.cosh(u) ** 2
    return t, dist, w


def _ts_float(f, a, b, tol, max_level):
    half = 0.5 * (b - a)
    raw = 0.0
    absraw = 0.0
    prev = None
    evals = 0
    for level in range(max_level + 1):
        t, dist, w = _ts_float_nodes(level)
        x = np.where(t >= 0, b - half * dist, a + half * dist)
        keep = (x > a) & (x < b) & (w > 0)
        x, w = x[keep], w[keep]
        fx = np.asarray(f(x))
        evals += x.size
        if fx.shape != x.shape:
            fx = np.broadcast_to(fx, x.shape)
        check_finite(fx, "integrand")
        raw = raw + np.sum(w * fx)
        absraw += float(np.sum(w * np.abs(fx)))
        h = 1.0 if level == 0 else 2.0 ** -level
        cur = raw * h * half
        if prev is not None and level >= 3:
            err = abs(cur - prev)
            floor = 8 * np.finfo(float).eps * absraw * h * abs(half)
            target = max(tol, tol * abs(cur), floor)
            if err <= target:
                return cur, max(err, floor), evals
        prev = cur
    raise ConvergenceError(
        f"tanh-sinh did not reach tol={tol:g} on [{a}, {b}] within {evals} evaluations")


def _ts_mp(f, a, b, tol, max_level):
    a = mp.mpf(a)
    b = mp.mpf(b)
    half = (b - a) / 2
    tmax = mp.mpf(3) + mp.log(mp.mp.dps) / 2
    raw = mp.mpc(0)
    prev = None
    evals = 0
    for level in range(max_level + 1):
        h = mp.mpf(2) ** -level
        if level == 0:
            ks = range(-int(tmax), int(tmax) + 1)
        else:
            pos = list(range(1, int(tmax / h) + 1, 2))
            ks = [-k for k in reversed(pos)] + pos
        for k in ks:
            t = k * h
            u = mp.pi / 2 * mp.sinh(t)
            dist = 2 / (1 + mp.exp(2 * abs(u)))
            w = mp.pi / 2 * mp.cosh(t) / mp.cosh(u) ** 2
            x = b - half * dist if t >= 0 else a + half * dist
            if x <= a or x >= b or w == 0:
                continue
            raw += w * f(x)
            evals += 1
        cur = raw * (1 if level == 0 else h) * half
        if prev is not None and level >= 3:
            err = abs(cur - prev)
            if err <= max(tol, tol * abs(cur)):
                return cur, err, evals
        prev = cur
    raise ConvergenceError(f"tanh-sinh (extended) did not reach tol={tol}")


def quad_finite(f: Callable, a, b, tol: float | None = None,
                ctx: PrecisionContext = DEFAULT, max_level: int | None = None) -> QuadratureResult:
    """Integrate ``f`` over [a, b] by tanh-sinh quadrature.

    In default precision ``f`` receives a float64 array of abscissae and must
    return an array of the same shape (real or complex). In extended mode it
    is called once per mpmath abscissa. Integrable algebraic endpoint
    singularities are fine; endpoints themselves are never evaluated.
    """
    tol = ctx.default_tol if tol is None else tol
    if not tol > 0:
        raise DomainError("tol must be positive")
    if a == b:
        # degenerate interval: zero, counted as one trivial evaluation
        return QuadratureResult(0.0 if not ctx.extended else mp.mpf(0), 0.0, 1)
    sign = 1
    if a > b:
        a, b, sign = b, a, -1
    if ctx.extended:
        with ctx.workdps():
            val, err, n = _ts_mp(f, a, b, tol, max_level or _MAX_LEVEL_MP)
            if val.imag == 0:
                val = val.real
            return QuadratureResult(sign * val, float(err), n)
    val, err, n = _ts_float(f, float(a), float(b), tol, max_level or _MAX_LEVEL_FLOAT)
    val = complex(val) if np.iscomplexobj(val) else float(val)
    return QuadratureResult(sign * val, float(err), n)


def quad_halfline_decay(f: Callable, tol: float | None = None, decay_rate: float = 1.0,
                        ctx: PrecisionContext = DEFAULT) -> QuadratureResult:
    """Integrate ``f`` over v in (0, inf) for integrands decaying like exp(-decay_rate v).

    tanh-sinh on (0, 1] absorbs a v^(-1/2) factor at the origin; [1, V_max]
    follows with V_max set from the decay rate so that the neglected tail is
    below tol/10. The tail bound's constant is fitted from samples of f.
    """
    tol = ctx.default_tol if tol is None else tol
    c = float(decay_rate)
    if not c > 0:
        raise DomainError("decay_rate must be positive")
    head = quad_finite(f, 0, 1, tol / 2, ctx)
    samples = 1.0 + np.arange(9) / c
    if ctx.extended:
        fs = np.array([abs(complex(f(mp.mpf(s)))) for s in samples])
    else:
        fs = np.abs(np.asarray(f(samples), dtype=complex))
    check_finite(fs, "integrand")
    amp = 2.0 * float(np.max(fs * np.exp(c * samples)))
    tol_abs = tol * max(1.0, abs(complex(head.value)))
    if amp == 0:
        vmax = 2.0
    else:
        vmax = max(2.0, math.log(10.0 * amp / (c * tol_abs)) / c)
    body = quad_finite(f, 1, vmax, tol / 2, ctx)
    if ctx.extended:
        f_end = abs(complex(f(mp.mpf(vmax))))
    else:
        f_end = float(np.abs(np.asarray(f(np.array([vmax])))[0]))
    if f_end / c > tol_abs:
        raise ConvergenceError(
            f"tail-truncation failure: |f(V_max={vmax:.3g})|/rate = {f_end / c:.3g} > {tol_abs:.3g}")
    value = head.value + body.value
    return QuadratureResult(value, head.error_estimate + body.error_estimate + tol_abs / 10,
                            head.evaluations + body.evaluations + 10)
