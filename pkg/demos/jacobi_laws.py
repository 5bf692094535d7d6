"""Completed lattice false thetas transform like Jacobi forms in (z, tau, w).

Two lattices: Z with form x^2, and the A2 root lattice with a shifted
copy. Each row is the worst residual over a batch of random points.
"""
import numpy as np

from falsetheta.theta.suites import RANK1, RANK2, RANK2_SHIFTED, random_jacobi_points
from falsetheta.theta.verify import verify_jacobi_elliptic, verify_jacobi_S, verify_jacobi_T

for name, lat in (("rank 1", RANK1), ("A2", RANK2), ("A2 + (1/3,1/3)", RANK2_SHIFTED)):
    pts = random_jacobi_points(lat.rank, 12, seed=5)
    t = max(verify_jacobi_T(lat, z, tau, w) for z, tau, w in pts)
    s = max(verify_jacobi_S(lat, z, tau, w) for z, tau, w in pts)
    one = np.ones(lat.rank, dtype=int)
    e = max(verify_jacobi_elliptic(lat, z, tau, w, one, one) for z, tau, w in pts)
    print(f"{name:<16} det={lat.det}  T {t:.1e}   S {s:.1e}   elliptic {e:.1e}")
