"""Exact linearizability analysis for systems of two third-order ODEs.

The package decides whether a system

    x''' + P x'^3 + Q x'^2 y' + R x' y'^2 + S y'^3 = 0
    y''' + T x'^3 + U x'^2 y' + V x' y'^2 + W y'^3 = 0

with rational-function coefficients in (x, y) can be transformed to
u''' = v''' = 0 subject to an underlying system of two second-order
geodesic-type equations, entirely in exact arithmetic.
"""

__version__ = "0.1.0"

from .symbolic import Polynomial, RationalExpr, parse_expr, parse_rational

__all__ = ["Polynomial", "RationalExpr", "parse_expr", "parse_rational", "__version__"]
