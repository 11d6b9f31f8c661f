"""Linearizability criteria for cubically semi-linear third-order systems."""
from .checker import check, check_variable
from .constant_case import (ConstantMatrix6, classify_constant,
                            constant_determinant, constant_matrix)
from .cubic import CubicCoeffs, CubicTensor, build_cubic_2d, build_cubic_general
from .recovery import (closed_form_recovery, compatibility_residuals, delta,
                       linear_residuals, linear_system, recover_coeffs,
                       solve_linear_system, system_determinant)
from .report import LinearizabilityReport

__all__ = [
    "check", "check_variable",
    "ConstantMatrix6", "classify_constant", "constant_determinant",
    "constant_matrix",
    "CubicCoeffs", "CubicTensor", "build_cubic_2d", "build_cubic_general",
    "closed_form_recovery", "compatibility_residuals", "delta",
    "linear_residuals", "linear_system", "recover_coeffs",
    "solve_linear_system", "system_determinant",
    "LinearizabilityReport",
]
