"""Forward construction of cubically semi-linear third-order systems.

Differentiating a geodesic-type second-order system once and eliminating the
second derivatives with the system itself produces

    x''' + P x'^3 + Q x'^2 y' + R x' y'^2 + S y'^3 = 0
    y''' + T x'^3 + U x'^2 y' + V x' y'^2 + W y'^3 = 0

whose eight coefficients are first-order differential expressions in the six
geodesic coefficients.  `build_cubic_2d` evaluates those expressions
verbatim; `build_cubic_general` is the n-dimensional symmetrized form, whose
normalization (one term per distinct arrangement of the lower indices) is
fixed by requiring exact agreement with the 2D formulas.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from ..criteria2 import GeodesicCoeffs2
from ..symbolic import RationalExpr
from ..tensor import Christoffel

_ZERO = RationalExpr.zero()


def _coerce(value) -> RationalExpr:
    if isinstance(value, RationalExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalExpr.from_const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class CubicCoeffs:
    """The eight named coefficients P..W of a two-equation cubic system."""

    __slots__ = ("P", "Q", "R", "S", "T", "U", "V", "W")

    def __init__(self, P, Q, R, S, T, U, V, W):
        for name, value in zip(self.__slots__, (P, Q, R, S, T, U, V, W)):
            object.__setattr__(self, name, _coerce(value))

    def __setattr__(self, name, value):
        raise AttributeError("CubicCoeffs is immutable")

    def astuple(self):
        return (self.P, self.Q, self.R, self.S, self.T, self.U, self.V, self.W)

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self.astuple())

    def __eq__(self, other):
        return isinstance(other, CubicCoeffs) and self.astuple() == other.astuple()

    def __hash__(self):
        return hash(self.astuple())

    def __iter__(self):
        return iter(self.astuple())

    def __repr__(self):
        inner = ", ".join(f"{n}={v}" for n, v in zip(self.__slots__, self.astuple()))
        return f"CubicCoeffs({inner})"


class CubicTensor:
    """Coefficients A^a_bcd of an n-equation cubic system, symmetric in bcd.

    The attached ODE sums each distinct combination of lower indices once:
    x^a''' + sum_{b<=c<=d} A^a_bcd x^b' x^c' x^d' = 0, which for n = 2 makes
    the named components of `CubicCoeffs` literal entries of the tensor.
    """

    __slots__ = ("dim", "components")

    def __init__(self, components):
        comp = tuple(
            tuple(tuple(tuple(_coerce(v) for v in row) for row in plane)
                  for plane in block)
            for block in components)
        n = len(comp)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        for p in set(permutations((b, c, d))):
                            if comp[a][p[0]][p[1]][p[2]] != comp[a][b][c][d]:
                                raise ValueError(
                                    f"components not symmetric at ({a},{b},{c},{d})")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "components", comp)

    def __setattr__(self, name, value):
        raise AttributeError("CubicTensor is immutable")

    def named_2d(self) -> CubicCoeffs:
        """View a 2D tensor under the P..W naming."""
        if self.dim != 2:
            raise ValueError("named coefficients exist only for dim 2")
        A = self.components
        return CubicCoeffs(A[0][0][0][0], A[0][0][0][1], A[0][0][1][1],
                           A[0][1][1][1], A[1][0][0][0], A[1][0][0][1],
                           A[1][0][1][1], A[1][1][1][1])

    def __eq__(self, other):
        return (isinstance(other, CubicTensor) and self.dim == other.dim
                and self.components == other.components)

    def __hash__(self):
        return hash(("CubicTensor", self.components))

    def __repr__(self):
        return f"CubicTensor(dim={self.dim})"


def build_cubic_2d(coeffs: GeodesicCoeffs2) -> CubicCoeffs:
    """Apply the eight explicit coefficient formulas."""
    a, b, c, d, e, f = coeffs.astuple()
    two = Fraction(2)
    P = -a.diff("x") - two * (a * a) - two * (b * d)
    Q = -a.diff("y") - two * b.diff("x") - two * (3 * (a * b) + 2 * (b * e) + c * d)
    R = (-(two * b.diff("y") + c.diff("x"))
         - two * (a * c + 2 * (b * b) + b * f + 2 * (c * e)))
    S = -c.diff("y") - two * (b * c + c * f)
    T = -d.diff("x") - two * (a * d) - two * (d * e)
    U = (-(d.diff("y") + two * e.diff("x"))
         - two * (2 * (b * d) + a * e + 2 * (e * e) + d * f))
    V = (-(two * e.diff("y") + f.diff("x"))
         - two * (c * d + 2 * (b * e) + 3 * (e * f)))
    W = -f.diff("y") - two * (c * e) - two * (f * f)
    return CubicCoeffs(P, Q, R, S, T, U, V, W)


def build_cubic_general(gamma: Christoffel) -> CubicTensor:
    """Symmetrized construction A^a_bcd from a connection in any dimension.

    Each distinct ordered arrangement (s1, s2, s3) of the lower multiset
    {b, c, d} contributes Gamma^a_{s1 s2, s3} - 2 Gamma^a_{m s1} Gamma^m_{s2 s3}
    once.  With that weight the 2D named components reproduce
    `build_cubic_2d` exactly.
    """
    n = gamma.dim
    G = gamma.components
    out = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(b, n):
                for d in range(c, n):
                    total = _ZERO
                    for s1, s2, s3 in set(permutations((b, c, d))):
                        term = _partial(G[a][s1][s2], s3)
                        for m in range(n):
                            term = term - 2 * (G[a][m][s1] * G[m][s2][s3])
                        total = total + term
                    for p in set(permutations((b, c, d))):
                        out[a][p[0]][p[1]][p[2]] = total
    return CubicTensor(out)


def _partial(expr: RationalExpr, axis: int) -> RationalExpr:
    if axis == 0:
        return expr.diff("x")
    if axis == 1:
        return expr.diff("y")
    return _ZERO
