"""Positive definite lattices, their discriminant groups and the signed lattice sums.

Conventions: ``B(m, n) = m^T A n`` and ``Q(n) = B(n, n) / 2`` for the Gram
matrix ``A``. A sum runs over the shifted lattice ``mu + l/2 + Z^N`` where
``l`` is a characteristic vector and ``mu`` lies in the dual lattice.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from ..errors import CostGuardError, DomainError
from ..numeric import erf_times_exp, sqrt_principal

MAX_RANK = 4
MAX_POINTS = 2_000_000


def _int_matrix(rows):
    m = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise DomainError("Gram matrix must be square and non-empty")
    return m


def _det(m):
    """Exact determinant of a small integer/Fraction matrix (Bareiss-free cofactor expansion)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


@dataclass(frozen=True)
class LatticePair:
    """Gram matrix, characteristic vector, unit direction and dual shift."""

    gram: tuple
    charvec: tuple
    direction: tuple
    shift: tuple

    @classmethod
    def build(cls, gram, charvec=None, direction=None, shift=None) -> "LatticePair":
        gram = _int_matrix(gram)
        n = len(gram)
        charvec = tuple(int(x) for x in (charvec if charvec is not None else [0] * n))
        if direction is None:
            direction = [0.0] * n
            direction[0] = 1.0 / math.sqrt(gram[0][0]) if gram[0][0] > 0 else 1.0
        shift = tuple(Fraction(x) for x in (shift if shift is not None else [0] * n))
        return cls(gram, charvec, tuple(float(x) for x in direction), shift)

    def __post_init__(self):
        A = self.gram
        n = len(A)
        if n > MAX_RANK:
            raise CostGuardError(f"rank {n} exceeds the supported maximum {MAX_RANK}")
        if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
            raise DomainError("Gram matrix is not symmetric")
        for k in range(1, n + 1):
            if _det([row[:k] for row in A[:k]]) <= 0:
                raise DomainError("Gram matrix is not positive definite")
        if len(self.charvec) != n or len(self.direction) != n or len(self.shift) != n:
            raise DomainError("vector lengths do not match the rank")
        Al = [sum(A[i][j] * self.charvec[j] for j in range(n)) for i in range(n)]
        if any((A[i][i] + Al[i]) % 2 for i in range(n)):
            raise DomainError("charvec is not characteristic: A_ii + (A l)_i must be even")
        c = np.array(self.direction)
        if abs(c @ self.A @ c - 1.0) > 1e-12:
            raise DomainError("direction must satisfy c^T A c = 1")
        Amu = [sum(A[i][j] * self.shift[j] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in Amu):
            raise DomainError("shift is not in the dual lattice (A mu must be integral)")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def A(self) -> np.ndarray:
        return np.array(self.gram, dtype=float)

    @property
    def det(self) -> int:
        return _det(self.gram)

    def with_shift(self, shift) -> "LatticePair":
        return replace(self, shift=tuple(Fraction(x) for x in shift))

    def with_direction(self, direction) -> "LatticePair":
        return replace(self, direction=tuple(float(x) for x in direction))

    def B(self, u, v):
        """Bilinear form, broadcasting over leading axes."""
        return np.einsum("...i,ij,...j->...", np.asarray(u), self.A, np.asarray(v))

    def Q(self, v):
        return 0.5 * self.B(v, v)

    def smallest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.A)[0])

    def base_point(self) -> np.ndarray:
        """mu + l/2 as floats."""
        return np.array([float(m) + 0.5 * l for m, l in zip(self.shift, self.charvec)])


@dataclass(frozen=True)
class CosetClass:
    """A class of L*/L, represented by a rational vector in [0, 1)^N."""

    rep: tuple

    def __post_init__(self):
        object.__setattr__(self, "rep", tuple(Fraction(x) - math.floor(Fraction(x)) for x in self.rep))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def snf(A):
    """Smith normal form ``A = U D V`` with U, V unimodular and d_i | d_{i+1}.

    Returns integer matrices as lists of lists.
    """
    M = [list(row) for row in _int_matrix(A)]
    n = len(M)
    if _det(M) == 0:
        raise DomainError("snf needs a nonsingular matrix")
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    # Invariant: U * M * V equals the input. Row op E on M => U <- U E^-1;
    # column op F on M => V <- F^-1 V.
    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_row(dst, src, q):  # row dst += q * row src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        for row in U:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in M:
            row[dst] += q * row[src]
        V[src] = [a - q * b for a, b in zip(V[src], V[dst])]

    for t in range(n):
        while True:
            entries = [(abs(M[i][j]), i, j) for i in range(t, n) for j in range(t, n) if M[i][j]]
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = M[t][t]
            dirty = False
            for i in range(t + 1, n):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    dirty |= M[i][t] != 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    dirty |= M[t][j] != 0
            if dirty:
                continue
            bad = [(i, j) for i in range(t + 1, n) for j in range(t + 1, n) if M[i][j] % p]
            if not bad:
                break
            add_row(t, bad[0][0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            for row in U:
                row[t] = -row[t]
    return U, M, V


def _int_inverse(V):
    """Inverse of a unimodular integer matrix via Fraction Gauss-Jordan."""
    n = len(V)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        raise DomainError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def dual_cosets(lat: LatticePair) -> list[CosetClass]:
    """Representatives of L*/L, one per class, from the Smith form of the Gram matrix."""
    _, D, V = snf(lat.gram)
    n = lat.rank
    Vinv = _int_inverse(V)
    diag = [D[i][i] for i in range(n)]
    out = []
    seen = set()
    for t in itertools.product(*(range(d) for d in diag)):
        vec = [sum(Vinv[i][k] * Fraction(t[k], diag[k]) for k in range(n)) for i in range(n)]
        cls = CosetClass(vec)
        if cls.rep not in seen:
            seen.add(cls.rep)
            out.append(cls)
    return out


# ---------------------------------------------------------------------------
# lattice sums
# ---------------------------------------------------------------------------

def _decay_radius(lat, tau2, s, y, tol):
    """Radius R with sum_{Q(n+y) > R} |term| <= tol for decay rate 2*pi*s.

    The tail is bounded by exp(-pi s R) * sum_v exp(-pi s Q(v)) times the
    growth e^{2 pi tau2 Q(y)} of the shifted Gaussian and a factor 2 for the
    erf weight; the lattice Gaussian sum is bounded through the smallest
    eigenvalue lambda by (1 + sqrt(2 / (s lambda)))^N.
    """
    lam = lat.smallest_eigenvalue()
    gauss = (1.0 + math.sqrt(2.0 / (s * lam))) ** lat.rank
    log_pref = math.log(2.0 * gauss) + 2 * math.pi * tau2 * float(lat.Q(y))
    return max(1.0, (log_pref - math.log(tol)) / (math.pi * s))


def _points(lat: LatticePair, y: np.ndarray, R: float) -> np.ndarray:
    """Points n of mu + l/2 + Z^N with Q(n + y) <= R, as an (M, N) array."""
    lam = lat.smallest_eigenvalue()
    rad = math.sqrt(2.0 * R / lam)
    base = lat.base_point()
    ranges = []
    count = 1
    for i in range(lat.rank):
        lo = math.ceil(-rad - base[i] - y[i])
        hi = math.floor(rad - base[i] - y[i])
        ranges.append(np.arange(lo, hi + 1))
        count *= max(0, hi - lo + 1)
    if count > MAX_POINTS:
        raise CostGuardError(f"lattice sum needs {count} points (limit {MAX_POINTS})")
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, lat.rank)
    pts = grid + base
    keep = lat.Q(pts + y) <= R
    return pts[keep]


def _prep(lat, z, tau):
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Im(tau) must be positive")
    z = np.asarray(z, dtype=complex).reshape(lat.rank)
    return z, tau


def _ordered_sum(terms):
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def big_psi(lat: LatticePair, z, tau, tol: float = 1e-14) -> complex:
    """sum_n sgn(B(c, n)) q^Q(n) e^(2 pi i B(n, z + l/2)) over mu + l/2 + Z^N."""
    z, tau = _prep(lat, z, tau)
    y = z.imag / tau.imag
    R = _decay_radius(lat, tau.imag, tau.imag, y, tol)
    n = _points(lat, y, R)
    shift = z + 0.5 * np.array(lat.charvec)
    sign = np.sign(lat.B(n, np.array(lat.direction)))
    phase = 2j * np.pi * (tau * lat.Q(n) + lat.B(n, shift))
    return _ordered_sum(sign * np.exp(phase))


def big_psi_hat(lat: LatticePair, z, tau, w, tol: float = 1e-14) -> complex:
    """Completed lattice sum with weight erf(-i sqrt(pi i (w - tau)) B(c, n + Im z / tau_2))."""
    z, tau = _prep(lat, z, tau)
    w = complex(w)
    if w.imag <= 0:
        raise DomainError("Im(w) must be positive")
    y = z.imag / tau.imag
    R = _decay_radius(lat, tau.imag, min(tau.imag, w.imag), y, tol)
    n = _points(lat, y, R)
    shift = z + 0.5 * np.array(lat.charvec)
    root = sqrt_principal(np.pi * 1j * (w - tau))
    u = -1j * root * lat.B(n + y, np.array(lat.direction))
    log_gauss = 2j * np.pi * (tau * lat.Q(n) + lat.B(n, shift))
    return _ordered_sum(erf_times_exp(u, log_gauss))


def chi(tau, w, M=None) -> complex:
    """chi_{tau,w}(M), each of the four square roots taken on the principal branch.

    ``M=None`` gives the S-matrix convention with automorphy factors tau and w.
    """
    tau, w = complex(tau), complex(w)
    if M is None:
        jt, jw = tau, w
    else:
        jt, jw = M.c * tau + M.d, M.c * w + M.d
    iwt = 1j * (w - tau)
    return (sqrt_principal(iwt / (jt * jw)) * sqrt_principal(jt) * sqrt_principal(jw)
            / sqrt_principal(iwt))
