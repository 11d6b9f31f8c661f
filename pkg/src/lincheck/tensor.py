"""Exact tensor calculus on metrics whose components are rational functions.

Components live in the field of rational functions of x and y with rational
coefficients, for any dimension n >= 2.  For n > 2 the extra coordinates are
cyclic: every component still depends only on x and y, so partial derivatives
along coordinates 2, 3, ... are zero.  That is enough to exercise the
curvature machinery at n = 3 while keeping the symbolic kernel bivariate.

All containers are nested tuples and all values immutable, so everything in
here is safe to share across threads or processes.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularMetric
from .symbolic import RationalExpr

_ZERO = RationalExpr.zero()


def _coerce(value) -> RationalExpr:
    if isinstance(value, RationalExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalExpr.from_const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a tensor component")


def _diff(expr: RationalExpr, axis: int) -> RationalExpr:
    """Partial derivative along coordinate `axis` (0 = x, 1 = y, else 0)."""
    if axis == 0:
        return expr.diff("x")
    if axis == 1:
        return expr.diff("y")
    return _ZERO


class Metric:
    """Symmetric n x n metric tensor g_ij."""

    __slots__ = ("dim", "components")

    def __init__(self, components: Sequence[Sequence]):
        rows = tuple(tuple(_coerce(v) for v in row) for row in components)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ValueError("metric components must form a square matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"metric is not symmetric at ({i},{j})")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "components", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Metric is immutable")

    @classmethod
    def identity(cls, n: int) -> "Metric":
        one = RationalExpr.one()
        return cls(tuple(tuple(one if i == j else _ZERO for j in range(n))
                         for i in range(n)))

    @classmethod
    def diagonal(cls, *entries) -> "Metric":
        n = len(entries)
        vals = [_coerce(v) for v in entries]
        return cls(tuple(tuple(vals[i] if i == j else _ZERO for j in range(n))
                         for i in range(n)))

    def determinant(self) -> RationalExpr:
        return _det(self.components, self.dim)

    def __eq__(self, other):
        return (isinstance(other, Metric) and self.dim == other.dim
                and self.components == other.components)

    def __hash__(self):
        return hash(("Metric", self.components))

    def __repr__(self):
        return f"Metric({self.components!r})"


def _det(m, n: int) -> RationalExpr:
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    # cofactor expansion along the first row; n stays tiny here
    total = _ZERO
    for j in range(n):
        minor = tuple(tuple(m[r][c] for c in range(n) if c != j)
                      for r in range(1, n))
        term = m[0][j] * _det(minor, n - 1)
        total = total - term if j % 2 else total + term
    return total


def inverse_metric(g: Metric) -> Metric:
    """Exact inverse via adjugate over determinant."""
    n = g.dim
    det = g.determinant()
    if det.is_zero:
        raise SingularMetric("metric determinant is identically zero")
    m = g.components
    if n == 1:
        return Metric(((RationalExpr.one() / m[0][0],),))
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = tuple(tuple(m[r][c] for c in range(n) if c != j)
                          for r in range(n) if r != i)
            cof = _det(minor, n - 1)
            if (i + j) % 2:
                cof = -cof
            inv[j][i] = cof / det  # adjugate transposes the cofactors
    return Metric(inv)


class Christoffel:
    """Connection coefficients Gamma^i_jk, symmetric in the lower pair."""

    __slots__ = ("dim", "components")

    def __init__(self, components):
        comp = tuple(tuple(tuple(_coerce(v) for v in row) for row in plane)
                     for plane in components)
        n = len(comp)
        if any(len(plane) != n or any(len(row) != n for row in plane)
               for plane in comp):
            raise ValueError("Christoffel components must be n x n x n")
        for i in range(n):
            for j in range(n):
                for k in range(j + 1, n):
                    if comp[i][j][k] != comp[i][k][j]:
                        raise ValueError(
                            f"lower indices not symmetric at ({i},{j},{k})")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "components", comp)

    def __setattr__(self, name, value):
        raise AttributeError("Christoffel is immutable")

    @classmethod
    def zero(cls, n: int) -> "Christoffel":
        return cls(tuple(tuple(tuple(_ZERO for _ in range(n))
                               for _ in range(n)) for _ in range(n)))

    def __eq__(self, other):
        return (isinstance(other, Christoffel) and self.dim == other.dim
                and self.components == other.components)

    def __hash__(self):
        return hash(("Christoffel", self.components))

    def __repr__(self):
        return f"Christoffel({self.components!r})"


def christoffel_from_metric(g: Metric) -> Christoffel:
    """Levi-Civita connection: Gamma^i_jk = g^il (g_jl,k + g_kl,j - g_jk,l)/2."""
    n = g.dim
    ginv = inverse_metric(g).components
    comp = g.components
    half = Fraction(1, 2)
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for k in range(j, n):
            brackets = [
                _diff(comp[j][l], k) + _diff(comp[k][l], j) - _diff(comp[j][k], l)
                for l in range(n)
            ]
            for i in range(n):
                total = _ZERO
                for l in range(n):
                    total = total + ginv[i][l] * brackets[l]
                val = total * half
                out[i][j][k] = val
                out[i][k][j] = val
    return Christoffel(out)


class RiemannUp:
    """Curvature tensor R^i_jkl of a connection."""

    __slots__ = ("dim", "components")

    def __init__(self, components):
        comp = tuple(
            tuple(tuple(tuple(_coerce(v) for v in row) for row in plane)
                  for plane in block)
            for block in components)
        object.__setattr__(self, "dim", len(comp))
        object.__setattr__(self, "components", comp)

    def __setattr__(self, name, value):
        raise AttributeError("RiemannUp is immutable")

    def is_zero(self) -> bool:
        return all(v.is_zero
                   for block in self.components for plane in block
                   for row in plane for v in row)

    def __repr__(self):
        return f"RiemannUp(dim={self.dim})"


class RiemannDown:
    """Fully lowered curvature tensor R_ijkl."""

    __slots__ = ("dim", "components")

    def __init__(self, components):
        comp = tuple(
            tuple(tuple(tuple(_coerce(v) for v in row) for row in plane)
                  for plane in block)
            for block in components)
        object.__setattr__(self, "dim", len(comp))
        object.__setattr__(self, "components", comp)

    def __setattr__(self, name, value):
        raise AttributeError("RiemannDown is immutable")

    def is_zero(self) -> bool:
        return all(v.is_zero
                   for block in self.components for plane in block
                   for row in plane for v in row)

    def __repr__(self):
        return f"RiemannDown(dim={self.dim})"


def riemann_up(gamma: Christoffel) -> RiemannUp:
    """R^i_jkl = Gamma^i_jl,k - Gamma^i_jk,l + Gm^i_mk Gm^m_jl - Gm^i_ml Gm^m_jk."""
    n = gamma.dim
    G = gamma.components
    out = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total = _diff(G[i][j][l], k) - _diff(G[i][j][k], l)
                    for m in range(n):
                        total = total + G[i][m][k] * G[m][j][l]
                        total = total - G[i][m][l] * G[m][j][k]
                    out[i][j][k][l] = total
    return RiemannUp(out)


def lower_riemann(r: RiemannUp, g: Metric, index_order: str = "paper") -> RiemannDown:
    """Lower the upper index with g.

    index_order "paper" contracts R_ijkl = g_im R^m_jlk (the last two lower
    indices swapped); "standard" contracts R_ijkl = g_im R^m_jkl.  Both are
    exposed because conventions differ and only convention-independent facts
    should be asserted downstream.
    """
    if r.dim != g.dim:
        raise ValueError("dimension mismatch between Riemann tensor and metric")
    if index_order not in ("paper", "standard"):
        raise ValueError("index_order must be 'paper' or 'standard'")
    n = r.dim
    R = r.components
    comp = g.components
    out = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total = _ZERO
                    for m in range(n):
                        upper = R[m][j][l][k] if index_order == "paper" else R[m][j][k][l]
                        total = total + comp[i][m] * upper
                    out[i][j][k][l] = total
    return RiemannDown(out)


def raise_riemann(r: RiemannDown, g: Metric, index_order: str = "paper") -> RiemannUp:
    """Inverse of lower_riemann with the matching index convention."""
    if r.dim != g.dim:
        raise ValueError("dimension mismatch between Riemann tensor and metric")
    n = r.dim
    ginv = inverse_metric(g).components
    R = r.components
    out = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total = _ZERO
                    for m in range(n):
                        lowered = R[m][j][l][k] if index_order == "paper" else R[m][j][k][l]
                        total = total + ginv[i][m] * lowered
                    out[i][j][k][l] = total
    return RiemannUp(out)


def is_flat(gamma: Christoffel) -> bool:
    return riemann_up(gamma).is_zero()


def geodesic_rhs(gamma: Christoffel, position, velocity):
    """Acceleration -Gamma^a_bc x^b' x^c' of the geodesic equation.

    Evaluates exactly when position and velocity are ints/Fractions, in
    floating point otherwise.
    """
    n = gamma.dim
    if len(position) != n or len(velocity) != n:
        raise ValueError("state dimension does not match the connection")
    exact = all(isinstance(v, (int, Fraction)) for v in position) and \
        all(isinstance(v, (int, Fraction)) for v in velocity)
    G = gamma.components
    px = position[0]
    py = position[1] if n > 1 else 0
    acc = []
    for a in range(n):
        if exact:
            total = Fraction(0)
            for b in range(n):
                vb = Fraction(velocity[b])
                if vb == 0:
                    continue
                for c in range(n):
                    vc = Fraction(velocity[c])
                    if vc == 0:
                        continue
                    coeff = G[a][b][c].eval_exact(Fraction(px), Fraction(py))
                    total -= coeff * vb * vc
        else:
            total = 0.0
            for b in range(n):
                vb = float(velocity[b])
                for c in range(n):
                    vc = float(velocity[c])
                    if vb == 0.0 and vc == 0.0:
                        continue
                    coeff = G[a][b][c].eval_float(float(px), float(py))
                    total -= coeff * vb * vc
        acc.append(total)
    return tuple(acc)


def metric_compatibility_residual(g: Metric, gamma: Christoffel):
    """g_ij,k - Gamma^l_ik g_lj - Gamma^l_jk g_il for all (i, j, k).

    Identically zero exactly when gamma is the Levi-Civita connection of g.
    """
    if g.dim != gamma.dim:
        raise ValueError("dimension mismatch between metric and connection")
    n = g.dim
    comp = g.components
    G = gamma.components
    out = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                total = _diff(comp[i][j], k)
                for l in range(n):
                    total = total - G[l][i][k] * comp[l][j]
                    total = total - G[l][j][k] * comp[i][l]
                row.append(total)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def _covariant_riemann_derivative(R, G, n: int, m: int, i: int, j: int, k: int, l: int):
    """nabla_m R^i_jkl for a (1,3) tensor field."""
    total = _diff(R[i][j][k][l], m)
    for p in range(n):
        total = total + G[i][p][m] * R[p][j][k][l]
        total = total - G[p][j][m] * R[i][p][k][l]
        total = total - G[p][k][m] * R[i][j][p][l]
        total = total - G[p][l][m] * R[i][j][k][p]
    return total


def second_bianchi_residual(gamma: Christoffel):
    """Cyclic sum R^i_jkl;m + R^i_jlm;k + R^i_jmk;l for all index tuples."""
    n = gamma.dim
    G = gamma.components
    R = riemann_up(gamma).components
    out = []
    for i in range(n):
        b1 = []
        for j in range(n):
            b2 = []
            for k in range(n):
                b3 = []
                for l in range(n):
                    row = []
                    for m in range(n):
                        total = (
                            _covariant_riemann_derivative(R, G, n, m, i, j, k, l)
                            + _covariant_riemann_derivative(R, G, n, k, i, j, l, m)
                            + _covariant_riemann_derivative(R, G, n, l, i, j, m, k)
                        )
                        row.append(total)
                    b3.append(tuple(row))
                b2.append(tuple(b3))
            b1.append(tuple(b2))
        out.append(tuple(b1))
    return tuple(out)
