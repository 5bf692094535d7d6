"""SL2(Z), Dedekind sums, the eta multiplier and the two Kloosterman sums.

Phases are kept as exact rationals mod 1 (:class:`UnityPower`) until the
final conversion, so a Kloosterman sum of k terms carries at most one
rounding per term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def _coprime(h, k):
    if k < 1:
        raise DomainError(f"modulus must be >= 1, got {k}")
    if math.gcd(h, k) != 1:
        raise DomainError(f"gcd({h}, {k}) != 1")


def inverse_neg_mod(h: int, k: int) -> int:
    """The h' in [0, k) with h h' = -1 (mod k)."""
    _coprime(h, k)
    if k == 1:
        return 0
    return (-pow(h, -1, k)) % k


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) via the reciprocity law and the Euclidean algorithm."""
    _coprime(h, k)
    sign = 1
    total = Fraction(0)
    h %= k
    while k > 1 and h:
        # s(h,k) = -s(k,h) - 1/4 + (h/k + k/h + 1/(hk))/12
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        sign = -sign
        h, k = k % h, h
    return total


@dataclass(frozen=True)
class SL2Z:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self.entries()} is not 1")

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "SL2Z") -> "SL2Z":
        return SL2Z(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "SL2Z":
        return SL2Z(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "SL2Z":
        return SL2Z(-self.a, -self.b, -self.c, -self.d)

    def act(self, tau):
        """Moebius action (a tau + b) / (c tau + d)."""
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau):
        return self.c * tau + self.d


S = SL2Z(0, -1, 1, 0)
T = SL2Z(1, 1, 0, 1)
IDENTITY = SL2Z(1, 0, 0, 1)


_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class UnityPower:
    """The root of unity exp(2 pi i * exponent), exponent kept in [0, 1)."""

    exponent: Fraction

    def __post_init__(self):
        e = Fraction(self.exponent)
        object.__setattr__(self, "exponent", e - math.floor(e))

    def __mul__(self, other: "UnityPower") -> "UnityPower":
        return UnityPower(self.exponent + other.exponent)

    def __pow__(self, n: int) -> "UnityPower":
        return UnityPower(self.exponent * n)

    def conjugate(self) -> "UnityPower":
        return UnityPower(-self.exponent)

    def value(self) -> complex:
        e = self.exponent
        if (4 * e).denominator == 1:
            return _QUARTER_TURNS[int(4 * e)]
        if e > Fraction(1, 2):
            e -= 1
        angle = 2 * math.pi * float(e)
        return complex(math.cos(angle), math.sin(angle))

    def __complex__(self):
        return self.value()


def eta_multiplier(M: SL2Z) -> UnityPower:
    """nu_eta(M) for c > 0, so that eta(M tau) = nu_eta(M) (c tau + d)^(1/2) eta(tau)."""
    if M.c <= 0:
        raise DomainError("eta_multiplier is defined here only for c > 0")
    half_turns = Fraction(M.a + M.d, 12 * M.c) - Fraction(1, 4) + dedekind_sum(-M.d, M.c)
    return UnityPower(half_turns / 2)


def matrix_hk(h: int, k: int) -> SL2Z:
    """The matrix (h', -(h h' + 1)/k; k, -h) attached to the Farey fraction h/k."""
    if not 0 <= h < k or math.gcd(h, k) != 1:
        raise DomainError(f"need 0 <= h < k with gcd(h, k) = 1, got ({h}, {k})")
    hp = inverse_neg_mod(h, k)
    return SL2Z(hp, -(h * hp + 1) // k, k, -h)


def _residues(k):
    return [h for h in range(k) if math.gcd(h, k) == 1]


def _fsum_phases(exponents) -> complex:
    vals = [UnityPower(e).value() for e in exponents]
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def kloosterman_g_phases(k: int, n: int) -> list[Fraction]:
    """Exact exponents (mod 1) of the terms of K_k(n), including the leading i."""
    if k < 1:
        raise DomainError("k must be >= 1")
    out = []
    for h in _residues(k):
        hp = inverse_neg_mod(h, k)
        nu = eta_multiplier(matrix_hk(h, k)).exponent
        out.append(Fraction(1, 4) + 2 * nu + Fraction(-(12 * n - 1) * h - hp, 12 * k))
    return out


def kloosterman_f_phases(k: int, n: int, r: int) -> list[Fraction]:
    """Exact exponents (mod 1) of the terms of K_k(n, r), including e^(3 pi i/4) (-1)^r."""
    if k < 1:
        raise DomainError("k must be >= 1")
    lead = Fraction(3, 8) + Fraction(r, 2)
    out = []
    for h in _residues(k):
        hp = inverse_neg_mod(h, k)
        nu = eta_multiplier(matrix_hk(h, k)).exponent
        out.append(lead - nu + Fraction(-(24 * n + 1) * h + (12 * r * r + 12 * r + 1) * hp, 24 * k))
    return out


def kloosterman_g(k: int, n: int) -> complex:
    """K_k(n) = i sum_h nu_eta(M_{h,k})^2 zeta_{12k}^(-(12n-1)h - h')."""
    return _fsum_phases(kloosterman_g_phases(k, n))


def kloosterman_f(k: int, n: int, r: int) -> complex:
    """K_k(n, r) = e^(3 pi i/4) (-1)^r sum_h nu_eta(M_{h,k})^(-1) zeta_{24k}^(-(24n+1)h + (12r^2+12r+1)h')."""
    return _fsum_phases(kloosterman_f_phases(k, n, r))
