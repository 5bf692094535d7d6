"""Multiplier system of the vector-valued unary thetas f_{j,N}, with exact phases."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import DomainError
from ..modular import SL2Z, UnityPower


def _sgn(x):
    return (x > 0) - (x < 0)


def multiplier_psi(j: int, r: int, N: int, M: SL2Z) -> complex:
    """psi_{j,r}(M) for 1 <= j, r <= N-1.

    For c = 0 this is the diagonal phase exp(2 pi i a b j^2/(4N)) exp(-pi i (1 - sgn d)/4).
    Note the d < 0 branch: at M = -I it gives -i, which is the value the
    weight-1/2 false theta law uses; the weight-3/2 law for f_{j,N} itself
    would need +i there.
    """
    if N < 2 or not (1 <= j <= N - 1 and 1 <= r <= N - 1):
        raise DomainError(f"need 1 <= j, r <= N-1 with N >= 2, got j={j}, r={r}, N={N}")
    a, b, c, d = M.entries()
    if c == 0:
        if j != r:
            return 0j
        return (UnityPower(Fraction(a * b * j * j, 4 * N)) * UnityPower(Fraction(-(1 - _sgn(d)), 8))).value()
    ac = abs(c)
    total_re = []
    total_im = []
    for k in range(ac):
        m = 2 * N * k + j
        phase = UnityPower(Fraction(a * m * m + d * r * r, 4 * N * c)).value()
        # sin(pi r m / (N |c|)) from an exactly reduced angle
        frac = Fraction(r * m, N * ac) % 2
        amp = math.sin(math.pi * float(frac)) if frac <= 1 else -math.sin(math.pi * float(frac - 1))
        total_re.append(phase.real * amp)
        total_im.append(phase.imag * amp)
    s = complex(math.fsum(total_re), math.fsum(total_im))
    lead = UnityPower(Fraction(-3 * _sgn(c), 8)).value()
    return lead * math.sqrt(2.0 / (N * ac)) * s


def multiplier_matrix(N: int, M: SL2Z) -> np.ndarray:
    """The (N-1) x (N-1) matrix [psi_{j,r}(M)]."""
    return np.array([[multiplier_psi(j, r, N, M) for r in range(1, N)] for j in range(1, N)])
