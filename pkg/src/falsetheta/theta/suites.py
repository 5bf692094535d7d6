"""Named verification suites: fixed fixtures plus seeded random points.

Each runner returns a list of :class:`Case` records so the CLI, the
acceptance tests and the demos all check the same configurations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..modular import S, SL2Z
from .lattice import LatticePair
from .verify import (quantum_integral, quantum_residual, verify_integral_representation,
                     verify_jacobi_elliptic, verify_jacobi_S, verify_jacobi_T,
                     verify_obstruction, verify_completion_limit, verify_selfdual)

RANK1 = LatticePair.build([[1]], charvec=[1], direction=[1.0])
RANK2 = LatticePair.build([[2, 1], [1, 2]], charvec=[0, 0], direction=[1 / np.sqrt(2), 0.0])
RANK2_SHIFTED = RANK2.with_shift([Fraction(1, 3), Fraction(1, 3)])

JACOBI_THRESHOLDS = {1: 1e-8, 2: 1e-6}

QUANTUM_PAIRS = ((1, 2), (1, 3), (2, 3))
QUANTUM_MATRICES = (S, SL2Z(1, 0, 1, 1), SL2Z(1, 0, 2, 1))
QUANTUM_TAUS = (1 / 3 + 0.2j, -0.4 + 0.25j, 0.3 + 0.05j)
QUANTUM_THRESHOLD = 1e-6
SWEEP_X = 0.37
SWEEP_EPS = (0.1, 0.05, 0.02)

OBSTRUCTION_CASES = ((S, 2j), (S, 0.25 + 1.5j), (SL2Z(1, 0, 1, 1), 0.5 + 2j), (SL2Z(1, 0, 1, 1), -0.3 + 1.2j))
OBSTRUCTION_THRESHOLD = 1e-7

SELFDUAL_CASES = ((0.2 + 1j, -0.3 + 1.3j), (0.5 + 0.8j, 0.1 + 2j))
SELFDUAL_X = (0.3, 1.2)
SELFDUAL_THRESHOLD = 1e-6

INTEGRAL_REP_CASES = ((1, 2, 1j), (1, 3, 0.25 + 1j / 3), (2, 3, -0.1 + 0.6j))
INTEGRAL_REP_THRESHOLD = 1e-9
LIMIT_CASES = ((1j, 0.5 + 2j), (0.3 + 1j, -0.2 + 0.5j), (0.3 + 0.7j, 0.1 + 1.5j), (-0.4 + 0.9j, 0.6 + 0.9j))
LIMIT_THRESHOLD = 1e-8


@dataclass(frozen=True)
class Case:
    label: str
    residual: float
    threshold: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.threshold


def random_jacobi_points(rank: int, count: int, seed: int):
    """Seeded (z, tau, w) triples with |w - tau| bounded away from the branch point."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 1.5))
        w = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 1.5))
        if abs(w - tau) < 0.1:
            continue
        z = rng.uniform(-0.5, 0.5, rank) + 1j * rng.uniform(-0.2, 0.2, rank) * tau.imag
        pts.append((z, tau, w))
    return pts


def run_jacobi(count: int = 20, seed: int = 0) -> list[Case]:
    cases = []
    for lat, name in ((RANK1, "rank1"), (RANK2, "rank2"), (RANK2_SHIFTED, "rank2-mu")):
        thr = JACOBI_THRESHOLDS[lat.rank]
        shifts = [np.eye(lat.rank, dtype=int)[0], np.ones(lat.rank, dtype=int)]
        for i, (z, tau, w) in enumerate(random_jacobi_points(lat.rank, count, seed + lat.rank)):
            cases.append(Case(f"{name}/T/{i}", verify_jacobi_T(lat, z, tau, w), thr))
            cases.append(Case(f"{name}/S/{i}", verify_jacobi_S(lat, z, tau, w), thr))
            m = shifts[i % 2]
            r = shifts[(i // 2) % 2]
            cases.append(Case(f"{name}/elliptic/{i}", verify_jacobi_elliptic(lat, z, tau, w, m, r), thr))
    return cases


def quantum_grid():
    return [(j, N, M, tau) for (j, N) in QUANTUM_PAIRS for M in QUANTUM_MATRICES for tau in QUANTUM_TAUS]


def run_quantum(count: int | None = None) -> list[Case]:
    """The first ``count`` grid fixtures, or the whole grid plus the continuity sweep."""
    grid = quantum_grid()
    if count is not None:
        grid = grid[:count]
    cases = [Case(f"j={j},N={N},M={M.entries()},tau={tau}", quantum_residual(j, N, M, tau), QUANTUM_THRESHOLD)
             for j, N, M, tau in grid]
    if count is None:
        cases += run_quantum_sweep()[0]
    return cases


def run_quantum_sweep() -> tuple[list[Case], list[complex]]:
    """Residuals along tau = x + i eps for shrinking eps, and the integral term at each eps."""
    cases, integrals = [], []
    for (j, N) in QUANTUM_PAIRS:
        for M in QUANTUM_MATRICES:
            for eps in SWEEP_EPS:
                tau = complex(SWEEP_X, eps)
                cases.append(Case(f"sweep j={j},N={N},M={M.entries()},eps={eps}",
                                  quantum_residual(j, N, M, tau), QUANTUM_THRESHOLD))
                integrals.append(quantum_integral(j, N, M, tau))
    return cases, integrals


def run_obstruction() -> list[Case]:
    return [Case(f"M={M.entries()},tau={tau}", verify_obstruction(M, tau, order=96), OBSTRUCTION_THRESHOLD)
            for M, tau in OBSTRUCTION_CASES]


def run_selfdual() -> list[Case]:
    return [Case(f"tau={tau},w={w},x={x}", verify_selfdual(tau, w, x), SELFDUAL_THRESHOLD)
            for tau, w in SELFDUAL_CASES for x in SELFDUAL_X]


def run_eichler() -> list[Case]:
    cases = [Case(f"F-integral j={j},N={N},tau={tau}", verify_integral_representation(j, N, tau), INTEGRAL_REP_THRESHOLD)
             for j, N, tau in INTEGRAL_REP_CASES]
    cases += [Case(f"completion-limit tau={tau},w={w}", verify_completion_limit(tau, w), LIMIT_THRESHOLD) for tau, w in LIMIT_CASES]
    return cases


SUITES = {
    "jacobi": lambda seed, count: run_jacobi(count or 20, seed),
    "quantum": lambda seed, count: run_quantum(count),
    "obstruction": lambda seed, count: run_obstruction(),
    "selfdual": lambda seed, count: run_selfdual(),
    "eichler": lambda seed, count: run_eichler(),
}
