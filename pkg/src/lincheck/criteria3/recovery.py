"""Recovery of geodesic coefficients from cubic third-order coefficients.

When the cubic system comes from differentiating a geodesic-type system,
the six geodesic coefficients (a, b, c, d, e, f) satisfy a 6x6 linear
system whose matrix entries are the cubic coefficients P..W and whose
right-hand side carries their first derivatives.  Two independent
evaluation paths are provided:

* `solve_linear_system` — fraction-free Gaussian elimination over the
  polynomial ring, then exact back substitution.  This is the
  authoritative path.
* `closed_form_recovery` — the expanded multiplier polynomials divided by
  the factored determinant `delta`.  Kept as a cross-check; `recover_coeffs`
  asserts exact agreement of the two paths by default.

`delta` is a compact factored form of the system determinant; the exact
scalar relation det(M) = -8 * delta is asserted in the test suite.
"""
from __future__ import annotations

from fractions import Fraction

from ..criteria2 import GeodesicCoeffs2
from ..errors import DeltaIdenticallyZero, LincheckError
from ..symbolic import Polynomial, RationalExpr, poly_gcd
from .cubic import CubicCoeffs

_THIRD = Fraction(1, 3)


def linear_system(A: CubicCoeffs):
    """Matrix M and right-hand side r with M (a,b,c,d,e,f)^T = r."""
    P, Q, R, S, T, U, V, W = A.astuple()
    zero = RationalExpr.zero()
    M = (
        (-2 * Q, 6 * P, zero, -2 * R, 2 * Q, zero),
        (-R, zero, 3 * P, -3 * S, zero, Q),
        (zero, -2 * R, 2 * Q, zero, -6 * S, 2 * R),
        (-2 * U, 6 * T, zero, -2 * V, 2 * U, zero),
        (-V, zero, 3 * T, -3 * W, zero, U),
        (zero, -2 * V, 2 * U, zero, -6 * W, 2 * V),
    )
    rhs = (
        Q.diff("x") - 3 * P.diff("y"),
        R.diff("x") - Q.diff("y"),
        3 * S.diff("x") - R.diff("y"),
        U.diff("x") - 3 * T.diff("y"),
        V.diff("x") - U.diff("y"),
        3 * W.diff("x") - V.diff("y"),
    )
    return M, rhs


def _cleared_rows(rows):
    """Scale each row by the lcm of its denominators; return polynomial rows
    together with the product of the scale factors applied."""
    out = []
    total_scale = RationalExpr.one()
    for row in rows:
        lcm = Polynomial.one()
        for entry in row:
            g = poly_gcd(lcm, entry.den)
            lcm = lcm.divexact(g) * entry.den
        out.append([entry.num * lcm.divexact(entry.den) for entry in row])
        total_scale = total_scale * RationalExpr(lcm)
    return out, total_scale


def _triangulate(rows, ncols):
    """In-place fraction-free elimination (Bareiss).  Returns (sign, ok);
    ok is False when some column has no usable pivot (singular matrix)."""
    n = len(rows)
    prev = Polynomial.one()
    sign = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if not rows[i][k].is_zero), None)
        if pivot_row is None:
            return sign, False
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, ncols):
                rows[i][j] = (rows[k][k] * rows[i][j]
                              - rows[i][k] * rows[k][j]).divexact(prev)
            rows[i][k] = Polynomial.zero()
        prev = rows[k][k]
    return sign, True


def system_determinant(A: CubicCoeffs) -> RationalExpr:
    """Exact determinant of the 6x6 recovery matrix."""
    M, _ = linear_system(A)
    rows, scale = _cleared_rows(M)
    sign, ok = _triangulate(rows, 6)
    if not ok:
        return RationalExpr.zero()
    return RationalExpr(rows[5][5]) * Fraction(sign) / scale


def solve_linear_system(A: CubicCoeffs) -> GeodesicCoeffs2:
    """Authoritative recovery: exact linear solve of the 6x6 system."""
    M, rhs = linear_system(A)
    rows, _ = _cleared_rows([list(row) + [r] for row, r in zip(M, rhs)])
    _, ok = _triangulate(rows, 7)
    if not ok:
        raise DeltaIdenticallyZero("recovery system is singular")
    values: list[RationalExpr] = [RationalExpr.zero()] * 6
    for i in range(5, -1, -1):
        acc = RationalExpr(rows[i][6])
        for j in range(i + 1, 6):
            acc = acc - RationalExpr(rows[i][j]) * values[j]
        values[i] = acc / RationalExpr(rows[i][i])
    return GeodesicCoeffs2(*values)


def delta(A: CubicCoeffs) -> RationalExpr:
    """Factored form of the recovery determinant (up to the -1/8 scale)."""
    P, Q, R, S, T, U, V, W = A.astuple()
    return 2 * (
        -(R ** 3) * (U ** 3 - 27 * T ** 2 * W)
        - 9 * Q ** 2 * (2 * S * T + P * W) * (V ** 2 - 3 * U * W)
        + 27 * P * S * (S * U ** 3 - 3 * S * T * U * V - P * V ** 3
                        + 3 * P * U * V * W)
        + Q ** 3 * (V ** 3 - 27 * T * W ** 2)
        + 3 * R ** 2 * (3 * S * T * (U ** 2 - 3 * T * V)
                        + 6 * P * (U ** 2 - 3 * T * V) * W
                        + Q * U * (U * V - 9 * T * W))
        + 27 * Q * S * (S * T * (-(U ** 2) + 3 * T * V)
                        + P * (U * V ** 2 - 2 * U ** 2 * W - 3 * T * V * W))
        + 3 * R * (Q ** 2 * V * (-(U * V) + 9 * T * W)
                   - 3 * Q * (S * T - P * W) * (-(U * V) + 9 * T * W)
                   + 9 * P * (P * W * (V ** 2 - 3 * U * W)
                              + S * (-(U ** 2 * V) + 2 * T * V ** 2
                                     + 3 * T * U * W)))
    )


# Multiplier polynomials of the closed-form solution.  Row i, slot j holds
# the cofactor-like body multiplying the j-th derivative combination in the
# numerator of the i-th coefficient; `_PREFACTORS` holds the integer scale
# of each body relative to `delta`.  Exact agreement of this path with the
# linear solve is asserted by `recover_coeffs` and by the test suite.

_PREFACTORS = (
    (3, 2, 3, -3, 2, -3),
    (-3, -2, -1, -3, 2, -1),
    (-3, -6, -1, 3, -6, 1),
    (1, 6, 3, 1, -6, 3),
    (-1, -2, -3, 1, -2, 3),
    (3, -2, -3, -3, 2, -3),
)


def _multiplier_bodies(A: CubicCoeffs):
    P, Q, R, S, T, U, V, W = A.astuple()

    qt_pu = Q * T - P * U
    ru_qv = R * U - Q * V
    sv_rw = S * V - R * W
    poly_a = (-3 * S * U ** 2 + 9 * S * T * V + R * U * V - Q * V ** 2
              - 9 * R * T * W + 3 * Q * U * W)
    poly_b = (R * U ** 2 - 3 * R * T * V - Q * U * V + 3 * P * V ** 2
              + 9 * Q * T * W - 9 * P * U * W)
    poly_c = (R ** 2 * U - 3 * Q * S * U - Q * R * V + 9 * P * S * V
              + 3 * Q ** 2 * W - 9 * P * R * W)
    poly_d = (3 * R ** 2 * T - 9 * Q * S * T - Q * R * U + 9 * P * S * U
              + Q ** 2 * V - 3 * P * R * V)

    b1 = (-9 * S ** 2 * T * U ** 2 + R * S * U ** 3 + 27 * S ** 2 * T ** 2 * V
          - Q * S * U ** 2 * V - 3 * Q * S * T * V ** 2 + 3 * P * S * U * V ** 2
          - 27 * R * S * T ** 2 * W + 18 * Q * S * T * U * W
          - Q * R * U ** 2 * W + 3 * Q * R * T * V * W - 27 * P * S * T * V * W
          + Q ** 2 * U * V * W - 3 * P * R * U * V * W - 9 * Q ** 2 * T * W ** 2
          + 27 * P * R * T * W ** 2)
    b2 = (9 * R * S * T * U ** 2 - R ** 2 * U ** 3 - 27 * R * S * T ** 2 * V
          + 2 * Q * R * U ** 2 * V - 9 * P * S * U ** 2 * V
          + 27 * P * S * T * V ** 2 - Q ** 2 * U * V ** 2
          + 27 * R ** 2 * T ** 2 * W - 18 * Q * R * T * U * W
          + 9 * P * R * U ** 2 * W + 9 * Q ** 2 * T * V * W
          - 27 * P * R * T * V * W)
    b4 = (Q * R * S * U ** 2 - 9 * P * S ** 2 * U ** 2 - 3 * Q * R * S * T * V
          + 27 * P * S ** 2 * T * V - Q ** 2 * S * U * V + 3 * P * R * S * U * V
          + 3 * Q * R ** 2 * T * W - 27 * P * R * S * T * W
          - Q ** 2 * R * U * W - 3 * P * R ** 2 * U * W
          + 18 * P * Q * S * U * W + Q ** 3 * V * W - 27 * P ** 2 * S * V * W
          - 9 * P * Q ** 2 * W ** 2 + 27 * P ** 2 * R * W ** 2)
    b5 = (Q * R ** 2 * U ** 2 - 9 * P * R * S * U ** 2 - 9 * Q ** 2 * S * T * V
          + 27 * P * R * S * T * V - 2 * Q ** 2 * R * U * V
          + 18 * P * Q * S * U * V + Q ** 3 * V ** 2 - 27 * P ** 2 * S * V ** 2
          + 9 * Q ** 2 * R * T * W - 27 * P * R ** 2 * T * W
          - 9 * P * Q ** 2 * V * W + 27 * P ** 2 * R * V * W)

    c1 = (3 * S ** 2 * U ** 3 - 9 * S ** 2 * T * U * V - 2 * R * S * U ** 2 * V
          + 3 * R * S * T * V ** 2 + 2 * Q * S * U * V ** 2 - 3 * P * S * V ** 3
          + 9 * R * S * T * U * W + R ** 2 * U ** 2 * W - 6 * Q * S * U ** 2 * W
          - 3 * R ** 2 * T * V * W + 9 * P * S * U * V * W - Q ** 2 * V ** 2 * W
          + 3 * P * R * V ** 2 * W + 3 * Q ** 2 * U * W ** 2
          - 9 * P * R * U * W ** 2)
    c4 = (R ** 2 * S * U ** 2 - 3 * Q * S ** 2 * U ** 2 - 3 * R ** 2 * S * T * V
          + 9 * Q * S ** 2 * T * V - Q ** 2 * S * V ** 2 + 3 * P * R * S * V ** 2
          + 3 * R ** 3 * T * W - 9 * Q * R * S * T * W - 2 * Q * R ** 2 * U * W
          + 6 * Q ** 2 * S * U * W + 2 * Q ** 2 * R * V * W
          - 3 * P * R ** 2 * V * W - 9 * P * Q * S * V * W - 3 * Q ** 3 * W ** 2
          + 9 * P * Q * R * W ** 2)

    d1 = sv_rw * (3 * S * U ** 2 - 9 * S * T * V - R * U * V + Q * V ** 2
                  + 9 * R * T * W - 3 * Q * U * W)
    d3 = (R ** 2 * U ** 2 * V - 9 * Q * S * T * V ** 2 - 2 * Q * R * U * V ** 2
          + 9 * P * S * U * V ** 2 + Q ** 2 * V ** 3 - 9 * R ** 2 * T * U * W
          + 27 * Q * S * T * U * W - 27 * P * S * U ** 2 * W
          + 18 * Q * R * T * V * W - 9 * P * Q * V ** 2 * W
          - 27 * Q ** 2 * T * W ** 2 + 27 * P * Q * U * W ** 2)
    d6 = (-9 * R ** 2 * S * T * U + 27 * Q * S ** 2 * T * U + R ** 3 * U ** 2
          - 27 * P * S ** 2 * U ** 2 - 2 * Q * R ** 2 * U * V
          + 18 * P * R * S * U * V + Q ** 2 * R * V ** 2 - 9 * P * Q * S * V ** 2
          + 9 * Q * R ** 2 * T * W - 27 * Q ** 2 * S * T * W
          - 9 * P * R ** 2 * U * W + 27 * P * Q * S * U * W)

    f3 = (-(R ** 2 * T * U ** 2) + 3 * Q * S * T * U ** 2 - 3 * P * S * U ** 3
          + 3 * R ** 2 * T ** 2 * V - 9 * Q * S * T ** 2 * V
          + 9 * P * S * T * U * V + 2 * P * R * U ** 2 * V + Q ** 2 * T * V ** 2
          - 6 * P * R * T * V ** 2 - 2 * P * Q * U * V ** 2 + 3 * P ** 2 * V ** 3
          - 3 * Q ** 2 * T * U * W + 3 * P * Q * U ** 2 * W
          + 9 * P * Q * T * V * W - 9 * P ** 2 * U * V * W)
    f6 = (3 * R ** 3 * T ** 2 - 9 * Q * R * S * T ** 2 - 2 * Q * R ** 2 * T * U
          + 3 * Q ** 2 * S * T * U + 9 * P * R * S * T * U + P * R ** 2 * U ** 2
          - 3 * P * Q * S * U ** 2 + 2 * Q ** 2 * R * T * V
          - 6 * P * R ** 2 * T * V - P * Q ** 2 * V ** 2 + 3 * P ** 2 * R * V ** 2
          - 3 * Q ** 3 * T * W + 9 * P * Q * R * T * W + 3 * P * Q ** 2 * U * W
          - 9 * P ** 2 * R * U * W)

    g3 = (-(R ** 2 * T * U * V) + 3 * Q * S * T * U * V - 3 * P * S * U ** 2 * V
          + Q * R * T * V ** 2 + P * R * U * V ** 2 - P * Q * V ** 3
          + 9 * R ** 2 * T ** 2 * W - 27 * Q * S * T ** 2 * W
          - 3 * Q * R * T * U * W + 27 * P * S * T * U * W
          + 3 * P * R * U ** 2 * W - 18 * P * R * T * V * W
          + 9 * P ** 2 * V ** 2 * W + 27 * P * Q * T * W ** 2
          - 27 * P ** 2 * U * W ** 2)
    g6 = (-9 * R ** 2 * S * T ** 2 + 27 * Q * S ** 2 * T ** 2 + R ** 3 * T * U
          - 27 * P * S ** 2 * T * U - Q * R ** 2 * T * V - 3 * Q ** 2 * S * T * V
          + 18 * P * R * S * T * V - P * R ** 2 * U * V + 3 * P * Q * S * U * V
          + P * Q * R * V ** 2 - 9 * P ** 2 * S * V ** 2 + 3 * Q ** 2 * R * T * W
          - 27 * P * Q * S * T * W - 3 * P * Q * R * U * W
          + 27 * P ** 2 * S * U * W)

    return (
        (b1, b2, qt_pu * poly_a, b4, b5, qt_pu * poly_c),
        (c1, ru_qv * poly_a, ru_qv * poly_b, c4, ru_qv * poly_c, ru_qv * poly_d),
        (d1, -(sv_rw * poly_b), d3, -(sv_rw * poly_c), -(sv_rw * poly_d), d6),
        (b2, qt_pu * poly_a, qt_pu * poly_b, b5, qt_pu * poly_c, qt_pu * poly_d),
        (ru_qv * poly_a, ru_qv * poly_b, f3, ru_qv * poly_c, ru_qv * poly_d, f6),
        (sv_rw * poly_b, d3, g3, -(sv_rw * poly_d), d6, g6),
    )


def closed_form_recovery(A: CubicCoeffs) -> GeodesicCoeffs2:
    """Cross-check recovery via the expanded multiplier polynomials."""
    P, Q, R, S, T, U, V, W = A.astuple()
    d = delta(A)
    if d.is_zero:
        raise DeltaIdenticallyZero("closed-form recovery needs a nonzero delta")
    diffs = (
        3 * P.diff("y") - Q.diff("x"),
        Q.diff("y") - R.diff("x"),
        R.diff("y") - 3 * S.diff("x"),
        3 * T.diff("y") - U.diff("x"),
        U.diff("y") - V.diff("x"),
        V.diff("y") - 3 * W.diff("x"),
    )
    bodies = _multiplier_bodies(A)
    values = []
    for prefs, row in zip(_PREFACTORS, bodies):
        acc = RationalExpr.zero()
        for k, body, diff in zip(prefs, row, diffs):
            if not diff.is_zero:
                acc = acc + k * (body * diff)
        values.append(acc / d)
    return GeodesicCoeffs2(*values)


def recover_coeffs(A: CubicCoeffs, cross_check: bool = True) -> GeodesicCoeffs2:
    """Recover (a, b, c, d, e, f) from a cubic coefficient set.

    Raises DeltaIdenticallyZero when every component of A is constant (the
    right-hand side of the system is then identically zero and the formulas
    degenerate) or when the determinant vanishes identically.
    """
    if A.is_constant():
        raise DeltaIdenticallyZero(
            "all cubic coefficients are constant; recovery degenerates")
    d = delta(A)
    if d.is_zero:
        raise DeltaIdenticallyZero("recovery determinant is identically zero")
    solved = solve_linear_system(A)
    if cross_check:
        closed = closed_form_recovery(A)
        if closed != solved:
            raise LincheckError(
                "closed-form recovery disagrees with the linear solve")
    return solved


def compatibility_residuals(A: CubicCoeffs, coeffs: GeodesicCoeffs2):
    """Twelve residuals: each partial derivative of a..f minus its
    determined value, ordered (a_x, a_y, b_x, b_y, c_x, c_y, d_x, d_y,
    e_x, e_y, f_x, f_y).  All vanish exactly when the coefficient set is
    flat and forward-builds to A."""
    P, Q, R, S, T, U, V, W = A.astuple()
    a, b, c, d, e, f = coeffs.astuple()
    return (
        a.diff("x") + (P + 2 * (a * a) + 2 * (b * d)),
        a.diff("y") + (Q * _THIRD + 2 * (a * b) + 2 * (b * e)),
        b.diff("x") + (Q * _THIRD + c * d + 2 * (a * b) + b * e),
        b.diff("y") + (R * _THIRD + b * b + a * c + c * e + b * f),
        c.diff("x") + (R * _THIRD + 2 * (b * b) + 2 * (c * e)),
        c.diff("y") + (S + 2 * (b * c) + 2 * (c * f)),
        d.diff("x") + (T + 2 * (a * d) + 2 * (d * e)),
        d.diff("y") + (U * _THIRD + 2 * (b * d) + 2 * (e * e)),
        e.diff("x") + (U * _THIRD + d * f + b * d + a * e + e * e),
        e.diff("y") + (V * _THIRD + c * d + b * e + 2 * (e * f)),
        f.diff("x") + (V * _THIRD + 2 * (b * e) + 2 * (e * f)),
        f.diff("y") + (W + 2 * (c * e) + 2 * (f * f)),
    )


def linear_residuals(A: CubicCoeffs, coeffs: GeodesicCoeffs2):
    """The six residuals of the linear recovery system at a coefficient set."""
    M, rhs = linear_system(A)
    vec = coeffs.astuple()
    out = []
    for row, r in zip(M, rhs):
        acc = -r
        for entry, value in zip(row, vec):
            if not entry.is_zero:
                acc = acc + entry * value
        out.append(acc)
    return tuple(out)
