"""Second-order layer: geodesic-type 2D systems and their flatness test.

A quadratically semi-linear system

    x'' = a x'^2 + 2b x'y' + c y'^2
    y'' = d x'^2 + 2e x'y' + f y'^2

is of geodesic type when it carries no linear or constant part.  Its six
coefficient functions are (minus) the Christoffel symbols of a connection,
and the system maps to straight lines under a point transformation exactly
when that connection is flat.  Flatness in two dimensions collapses to four
first-order identities in a..f, which this module evaluates directly; the
full Riemann tensor in `tensor` serves as an independent cross-check.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NonGeodesicType
from .symbolic import RationalExpr
from .tensor import Christoffel

_ZERO = RationalExpr.zero()


def _coerce(value) -> RationalExpr:
    if isinstance(value, RationalExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalExpr.from_const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class GeodesicCoeffs2:
    """The six coefficient functions a, b, c, d, e, f of a geodesic-type system."""

    __slots__ = ("a", "b", "c", "d", "e", "f")

    def __init__(self, a, b, c, d, e, f):
        for name, value in zip(self.__slots__, (a, b, c, d, e, f)):
            object.__setattr__(self, name, _coerce(value))

    def __setattr__(self, name, value):
        raise AttributeError("GeodesicCoeffs2 is immutable")

    def astuple(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def __eq__(self, other):
        return isinstance(other, GeodesicCoeffs2) and self.astuple() == other.astuple()

    def __hash__(self):
        return hash(self.astuple())

    def __iter__(self):
        return iter(self.astuple())

    def __repr__(self):
        inner = ", ".join(str(v) for v in self.astuple())
        return f"GeodesicCoeffs2({inner})"


class QuadraticSystem2:
    """General quadratically semi-linear system: gamma plus linear/constant parts."""

    __slots__ = ("gamma", "beta", "alpha")

    def __init__(self, gamma: GeodesicCoeffs2, beta=None, alpha=None):
        if beta is None:
            beta = ((0, 0), (0, 0))
        if alpha is None:
            alpha = (0, 0)
        beta = tuple(tuple(_coerce(v) for v in row) for row in beta)
        alpha = tuple(_coerce(v) for v in alpha)
        if len(beta) != 2 or any(len(row) != 2 for row in beta) or len(alpha) != 2:
            raise ValueError("beta must be 2x2 and alpha length 2")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSystem2 is immutable")


def from_quadratic_system(sys: QuadraticSystem2) -> GeodesicCoeffs2:
    """Extract the geodesic part, refusing systems with linear/constant terms."""
    offending = []
    for i in range(2):
        for j in range(2):
            if not sys.beta[i][j].is_zero:
                offending.append(f"beta[{i + 1}][{j + 1}] = {sys.beta[i][j]}")
    for i in range(2):
        if not sys.alpha[i].is_zero:
            offending.append(f"alpha[{i + 1}] = {sys.alpha[i]}")
    if offending:
        raise NonGeodesicType(
            "system is not of geodesic type: " + "; ".join(offending))
    return sys.gamma


def to_christoffel(coeffs: GeodesicCoeffs2) -> Christoffel:
    """Sign map: Gamma^1_11=-a, Gamma^1_12=-b, Gamma^1_22=-c, and d, e, f for x^2."""
    a, b, c, d, e, f = coeffs.astuple()
    return Christoffel((
        ((-a, -b), (-b, -c)),
        ((-d, -e), (-e, -f)),
    ))


def from_christoffel(gamma: Christoffel) -> GeodesicCoeffs2:
    """Inverse of the sign map, for 2D connections."""
    if gamma.dim != 2:
        raise ValueError("geodesic coefficients are only defined for dim 2")
    G = gamma.components
    return GeodesicCoeffs2(-G[0][0][0], -G[0][0][1], -G[0][1][1],
                           -G[1][0][0], -G[1][0][1], -G[1][1][1])


def flatness_residuals(coeffs: GeodesicCoeffs2):
    """The four flatness left-hand sides; all zero iff the connection is flat."""
    a, b, c, d, e, f = coeffs.astuple()
    r1 = a.diff("y") - b.diff("x") + b * e - c * d
    r2 = b.diff("y") - c.diff("x") + (a * c - b * b) + (b * f - c * e)
    r3 = d.diff("y") - e.diff("x") - (a * e - b * d) - (d * f - e * e)
    r4 = (b + f).diff("x") - (a + e).diff("y")
    return (r1, r2, r3, r4)


def is_linearizable2(coeffs: GeodesicCoeffs2) -> bool:
    return all(r.is_zero for r in flatness_residuals(coeffs))
