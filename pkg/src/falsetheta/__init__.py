"""False theta functions, their modular completions, and an exact formula for unimodal sequences."""
from .errors import BranchCutError, ConvergenceError, CostGuardError, DomainError, FalseThetaError
from .modular import SL2Z, dedekind_sum, eta_multiplier, kloosterman_f, kloosterman_g
from .numeric import PrecisionContext, bessel_i, erf_complex, quad_finite, quad_halfline_decay
from .qseries import (IntSeries, brute_force_unimodal, coeffs_f, coeffs_g, euler_product,
                      series_inverse, unimodal_count)
from .rademacher import (RademacherConfig, alpha_f_formula, alpha_g_formula, auluck_main,
                         coefficient_table, u_rademacher)

__version__ = "0.1.0"

__all__ = [
    "BranchCutError", "ConvergenceError", "CostGuardError", "DomainError", "FalseThetaError",
    "IntSeries", "PrecisionContext", "RademacherConfig", "SL2Z", "alpha_f_formula", "alpha_g_formula",
    "auluck_main", "bessel_i", "brute_force_unimodal", "coeffs_f", "coeffs_g", "coefficient_table",
    "dedekind_sum", "erf_complex", "eta_multiplier", "euler_product", "kloosterman_f", "kloosterman_g",
    "quad_finite", "quad_halfline_decay", "series_inverse", "u_rademacher", "unimodal_count",
]
