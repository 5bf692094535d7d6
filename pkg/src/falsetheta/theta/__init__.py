"""Lattice false thetas, their completions, Eichler integrals and identity checks."""
from .eichler import (eichler_eta3, eichler_eta3_erf_series, eichler_f, estar_principal)
from .false_theta import F_false, F_hat, FalseThetaParams, eta_cubed, f_unary, psi_false, psi_hat
from .lattice import CosetClass, LatticePair, big_psi, big_psi_hat, chi, dual_cosets, snf
from .multiplier import multiplier_matrix, multiplier_psi
from .verify import (quantum_integral, quantum_lhs, quantum_residual, verify_completion_limit,
                     verify_eta_law, verify_integral_representation, verify_jacobi_elliptic,
                     verify_jacobi_S, verify_jacobi_T, verify_obstruction, verify_selfdual)

__all__ = [
    "CosetClass", "F_false", "F_hat", "FalseThetaParams", "LatticePair", "big_psi", "big_psi_hat",
    "chi", "dual_cosets", "eichler_eta3", "eichler_eta3_erf_series", "eichler_f", "estar_principal",
    "eta_cubed", "f_unary", "multiplier_matrix", "multiplier_psi", "psi_false", "psi_hat",
    "quantum_integral", "quantum_lhs", "quantum_residual", "snf", "verify_completion_limit",
    "verify_eta_law", "verify_integral_representation", "verify_jacobi_S", "verify_jacobi_T",
    "verify_jacobi_elliptic", "verify_obstruction", "verify_selfdual",
]
