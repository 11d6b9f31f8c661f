"""Top-level linearizability decisions for cubic third-order systems."""
from __future__ import annotations

from ..criteria2 import flatness_residuals
from .constant_case import classify_constant
from .cubic import CubicCoeffs, build_cubic_2d
from .recovery import compatibility_residuals, delta, recover_coeffs
from .report import LinearizabilityReport

_SPLIT_NAMES = ("a_x", "a_y", "b_x", "b_y", "c_x", "c_y",
                "d_x", "d_y", "e_x", "e_y", "f_x", "f_y")


def check_variable(A: CubicCoeffs) -> LinearizabilityReport:
    """Decide linearizability when at least one coefficient is variable.

    Recovers the candidate geodesic coefficients, then requires all twelve
    derivative determinations, the four flatness residuals, and exact
    forward reconstruction of A.  Raises DeltaIdenticallyZero when the
    recovery determinant vanishes identically.
    """
    coeffs = recover_coeffs(A)
    failed = []
    for name, residual in zip(_SPLIT_NAMES, compatibility_residuals(A, coeffs)):
        if not residual.is_zero:
            failed.append((f"compatibility:{name}", residual))
    for index, residual in enumerate(flatness_residuals(coeffs), start=1):
        if not residual.is_zero:
            failed.append((f"flatness:{index}", residual))
    rebuilt = build_cubic_2d(coeffs)
    for name, got, want in zip(CubicCoeffs.__slots__, rebuilt.astuple(),
                               A.astuple()):
        if got != want:
            failed.append((f"forward:{name}", got - want))
    if failed:
        return LinearizabilityReport("NotLinearizable", "VariableCase",
                                     failed_conditions=tuple(failed))
    return LinearizabilityReport("Linearizable", "VariableCase",
                                 branches=(coeffs,))


def check(A: CubicCoeffs) -> LinearizabilityReport:
    """Dispatch on the shape of the coefficient set.

    All-constant coefficients go to the dedicated constant-coefficient
    classifier; variable coefficients with a usable determinant go through
    recovery; anything else is reported Inconclusive.
    """
    if A.is_constant():
        return classify_constant(A)
    if delta(A).is_zero:
        return LinearizabilityReport(
            "Inconclusive", "VariableCase",
            notes="variable coefficients with delta identically zero: the "
                  "recovery system is singular and these criteria do not apply")
    return check_variable(A)
