"""The unary false theta F_{j,N} fails to be modular by an Eichler integral.

For M in SL2(Z), F(M tau) minus the multiplier-twisted F(tau) is an
integral of the weight 3/2 theta f_{r,N} from -d/c to i infinity. We check
the identity and then push tau towards the real line, where the integral
stays finite.
"""
import numpy as np

from falsetheta.modular import S, SL2Z
from falsetheta.theta import multiplier_matrix, quantum_integral, quantum_residual

np.set_printoptions(precision=4, suppress=True)
print("multiplier for S, N = 3:")
print(multiplier_matrix(3, S))

M = SL2Z(1, 0, 2, 1)
for j, N in ((1, 2), (1, 3), (2, 3)):
    print(f"\nj={j} N={N}  M={M.entries()}")
    for eps in (0.2, 0.1, 0.05, 0.02, 0.01):
        tau = complex(0.37, eps)
        I = quantum_integral(j, N, M, tau)
        print(f"  Im tau={eps:<5} integral={I.real:+.8f}{I.imag:+.8f}i  residual={quantum_residual(j, N, M, tau):.1e}")
