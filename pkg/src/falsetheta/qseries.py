"""Exact integer q-series: eta products, the f/g coefficient tables and u(n).

A series is stored as ``q^(offset24/24) * sum_n coeffs[n] q^n`` with Python
integers, so products and inverses are exact up to the declared order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, CostGuardError, DomainError

DEFAULT_ORDER = 256
BRUTE_FORCE_MAX_N = 40


@dataclass(frozen=True)
class IntSeries:
    offset24: int
    coeffs: tuple
    order: int

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.order < 1:
            raise DomainError("order must be >= 1")
        if len(coeffs) < self.order:
            coeffs = coeffs + (0,) * (self.order - len(coeffs))
        elif len(coeffs) > self.order:
            coeffs = coeffs[: self.order]
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.order

    def truncate(self, order: int) -> "IntSeries":
        if order > self.order:
            raise DomainError(f"cannot extend a series known to order {self.order} to {order}")
        return IntSeries(self.offset24, self.coeffs[:order], order)

    def __add__(self, other: "IntSeries") -> "IntSeries":
        if self.offset24 != other.offset24:
            raise DomainError("cannot add series with different q-offsets")
        order = min(self.order, other.order)
        return IntSeries(self.offset24,
                         [a + b for a, b in zip(self.coeffs[:order], other.coeffs[:order])], order)

    def __neg__(self) -> "IntSeries":
        return IntSeries(self.offset24, [-c for c in self.coeffs], self.order)

    def __sub__(self, other: "IntSeries") -> "IntSeries":
        return self + (-other)

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [0] * order
        for i in range(order):
            ai = a[i]
            if ai:
                for j in range(order - i):
                    out[i + j] += ai * b[j]
        return IntSeries(self.offset24 + other.offset24, out, order)

    def __pow__(self, e: int) -> "IntSeries":
        if e < 0:
            return series_inverse(self, self.order) ** (-e)
        out = IntSeries(0, [1], self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, tau, tol: float = 1e-15):
        """Numerical value at ``tau`` (upper half plane), scalar or array.

        Raises if the last retained term is not negligible, i.e. the order is
        too small for this ``tau``.
        """
        tau = np.asarray(tau, dtype=complex)
        if np.any(tau.imag <= 0):
            raise DomainError("evaluate needs Im(tau) > 0")
        q = np.exp(2j * np.pi * tau)
        acc = np.zeros_like(q)
        for c in reversed(self.coeffs):
            acc = acc * q + float(c)
        prefactor = np.exp(2j * np.pi * tau * self.offset24 / 24)
        tail = np.zeros(q.shape)
        for n in range(max(0, self.order - 4), self.order):
            tail = np.maximum(tail, abs(float(self.coeffs[n])) * np.abs(q) ** n)
        if np.any(tail > tol * np.maximum(np.abs(acc), 1e-300)):
            raise ConvergenceError(
                f"q-series of order {self.order} truncated too early at Im(tau)={tau.imag.min():.3g}")
        val = prefactor * acc
        return complex(val) if val.ndim == 0 else val


def _check_order(order):
    if int(order) != order or order < 1:
        raise DomainError(f"order must be a positive integer, got {order!r}")
    return int(order)


def euler_product(order: int = DEFAULT_ORDER) -> IntSeries:
    """(q;q)_inf to the given order via the pentagonal number theorem."""
    order = _check_order(order)
    c = [0] * order
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e < order:
                c[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return IntSeries(0, c, order)


def series_inverse(s: IntSeries, order: int | None = None) -> IntSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    order = s.order if order is None else _check_order(order)
    if order > s.order:
        raise DomainError(f"series known only to order {s.order}")
    a = s.coeffs
    c0 = a[0]
    if c0 not in (1, -1):
        raise DomainError(f"constant coefficient {c0} is not a unit")
    b = [0] * order
    b[0] = c0
    for n in range(1, order):
        acc = 0
        for j in range(1, n + 1):
            if a[j]:
                acc += a[j] * b[n - j]
        b[n] = -c0 * acc
    return IntSeries(-s.offset24, b, order)


def eta_series(order: int = DEFAULT_ORDER) -> IntSeries:
    """Dedekind eta as q^(1/24) (q;q)_inf."""
    e = euler_product(order)
    return IntSeries(1, e.coeffs, e.order)


def _triangular_alternating(order, start):
    c = [0] * order
    n = start
    while n * (n + 1) // 2 < order:
        c[n * (n + 1) // 2] += -1 if n % 2 else 1
        n += 1
    return c


@lru_cache(maxsize=8)
def _inverse_euler_squared(order):
    return series_inverse(euler_product(order) ** 2)


def coeffs_g(order: int = DEFAULT_ORDER) -> IntSeries:
    """1/eta^2 = q^(-1/12) / (q;q)_inf^2."""
    order = _check_order(order)
    inv = _inverse_euler_squared(order)
    return IntSeries(-2, inv.coeffs, order)


def coeffs_f(order: int = DEFAULT_ORDER) -> IntSeries:
    """The false-theta quotient q^(1/24) sum_{n>=0} (-1)^n q^(n(n+1)/2) / (q;q)_inf^2."""
    order = _check_order(order)
    num = IntSeries(0, _triangular_alternating(order, 0), order)
    return IntSeries(1, (num * _inverse_euler_squared(order)).coeffs, order)


def unimodal_series(order: int = DEFAULT_ORDER) -> IntSeries:
    """U(q) = sum_{n>=1} (-1)^(n+1) q^(n(n+1)/2) / (q;q)_inf^2, whose q^0 term is 0."""
    order = _check_order(order)
    num = IntSeries(0, [-c for c in _triangular_alternating(order, 1)], order)
    return num * _inverse_euler_squared(order)


def unimodal_count(n: int) -> int:
    """Number of unimodal sequences of size n (n >= 1), read off U(q)."""
    if int(n) != n or n < 1:
        raise DomainError(f"unimodal_count needs an integer n >= 1, got {n!r}")
    n = int(n)
    order = max(64, 1 << (n + 1).bit_length())
    return unimodal_series(order)[n]


def _partitions(total, largest):
    """Yield partitions of ``total`` with parts <= ``largest`` as tuples."""
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def brute_force_unimodal(n: int) -> int:
    """Count unimodal sequences of size n by explicit enumeration.

    Every sequence is cut at the first occurrence of its maximum m: the part
    before it is a partition with parts < m (read increasingly), the part after
    it a partition with parts <= m (read decreasingly). Both sides are listed
    explicitly and glued.
    """
    if int(n) != n or n < 1:
        raise DomainError("brute_force_unimodal needs n >= 1")
    if n > BRUTE_FORCE_MAX_N:
        raise CostGuardError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    total = 0
    for peak in range(1, n + 1):
        rest = n - peak
        for left in range(rest + 1):
            lefts = sum(1 for _ in _partitions(left, peak - 1))
            if not lefts:
                continue
            rights = sum(1 for _ in _partitions(rest - left, peak))
            total += lefts * rights
    return total
