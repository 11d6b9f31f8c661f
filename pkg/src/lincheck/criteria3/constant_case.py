"""Decision procedure for constant-coefficient cubic systems.

With every cubic coefficient constant, the linear recovery system loses its
right-hand side, so nontrivial geodesic coefficients can exist only when the
6x6 coefficient matrix is singular.  The coefficients themselves must solve
the reduced quadratic relations

    P = -2(a^2+bd),   Q = -6b(a+e),   R = -6(b^2+ce),   S = -2c(b+f),
    T = -2d(a+e),     U = -6(bd+e^2), V = -6e(b+f),     W = -2(ce+f^2),

subject to   cd = be,   b^2 + ce = ac + bf,   bd + e^2 = df + ae.

The search is partitioned into cases by which of b, c, d vanish; each case
generates candidate solutions from the closed forms above, enumerating every
sign branch of the square roots involved.  A candidate is accepted only when
it reproduces the input exactly and satisfies the three constraints.  Square
roots that are not rational yield float candidates instead; these can make
the verdict Inconclusive (with a note) but never Linearizable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..criteria2 import GeodesicCoeffs2
from ..errors import NotConstant
from .cubic import CubicCoeffs
from .report import LinearizabilityReport

_REL_TOL = 1e-12
_ZERO = Fraction(0)


def _require_constant(A: CubicCoeffs) -> tuple[Fraction, ...]:
    bad = [name for name, value in zip(CubicCoeffs.__slots__, A.astuple())
           if not value.is_constant()]
    if bad:
        raise NotConstant("coefficients are not constant: " + ", ".join(bad))
    return tuple(value.constant_value() for value in A.astuple())


class ConstantMatrix6:
    """The 6x6 rational matrix of the constant-coefficient linear system."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(Fraction(value) for value in row) for row in entries)
        if len(rows) != 6 or any(len(row) != 6 for row in rows):
            raise ValueError("expected a 6x6 matrix")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ConstantMatrix6 is immutable")

    def determinant(self) -> Fraction:
        m = [list(row) for row in self.entries]
        det = Fraction(1)
        for k in range(6):
            pivot = next((i for i in range(k, 6) if m[i][k] != 0), None)
            if pivot is None:
                return _ZERO
            if pivot != k:
                m[k], m[pivot] = m[pivot], m[k]
                det = -det
            det *= m[k][k]
            for i in range(k + 1, 6):
                if m[i][k] == 0:
                    continue
                factor = m[i][k] / m[k][k]
                for j in range(k, 6):
                    m[i][j] -= factor * m[k][j]
        return det

    def __eq__(self, other):
        return isinstance(other, ConstantMatrix6) and self.entries == other.entries

    def __repr__(self):
        return f"ConstantMatrix6({self.entries!r})"


def constant_matrix(A: CubicCoeffs) -> ConstantMatrix6:
    P, Q, R, S, T, U, V, W = _require_constant(A)
    return ConstantMatrix6((
        (-2 * Q, 6 * P, 0, -2 * R, 2 * Q, 0),
        (-R, 0, 3 * P, -3 * S, 0, Q),
        (0, -2 * R, 2 * Q, 0, -6 * S, 2 * R),
        (-2 * U, 6 * T, 0, -2 * V, 2 * U, 0),
        (-V, 0, 3 * T, -3 * W, 0, U),
        (0, -2 * V, 2 * U, 0, -6 * W, 2 * V),
    ))


def constant_determinant(A: CubicCoeffs) -> Fraction:
    return constant_matrix(A).determinant()


# --- candidate generation ----------------------------------------------


def _forward8(g):
    a, b, c, d, e, f = g
    return (-2 * (a * a + b * d), -6 * b * (a + e), -6 * (b * b + c * e),
            -2 * c * (b + f), -2 * d * (a + e), -6 * (b * d + e * e),
            -6 * e * (b + f), -2 * (c * e + f * f))


def _constraints3(g):
    a, b, c, d, e, f = g
    return (c * d - b * e,
            b * b + c * e - a * c - b * f,
            b * d + e * e - d * f - a * e)


def _accepts(values, g) -> bool:
    return (_forward8(g) == values
            and all(residual == 0 for residual in _constraints3(g)))


def _near(x: float, y: float) -> bool:
    return abs(x - y) <= _REL_TOL * max(1.0, abs(x), abs(y))


def _accepts_numeric(values, g) -> bool:
    gf = tuple(float(v) for v in g)
    built = _forward8(gf)
    if not all(_near(got, float(want)) for got, want in zip(built, values)):
        return False
    scale = 1.0 + max(abs(v) for v in gf) ** 2
    return all(abs(res) <= _REL_TOL * scale for res in _constraints3(gf))


def _exact_sqrt(q: Fraction) -> Fraction | None:
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _roots_of_square(q: Fraction, label: str):
    """Solutions of v^2 = q: (exact values, float values, blocking message)."""
    if q < 0:
        return [], [], f"{label} = {q} is negative"
    if q == 0:
        return [_ZERO], [], None
    root = _exact_sqrt(q)
    if root is not None:
        return [root, -root], [], None
    approx = math.sqrt(q)
    return [], [approx, -approx], None


@dataclass
class _Search:
    exact: list = field(default_factory=list)
    numeric: list = field(default_factory=list)     # (description, tuple)
    blockers: list = field(default_factory=list)    # strings
    open_ended: bool = False

    def emit(self, description, candidate):
        if all(isinstance(v, Fraction) for v in candidate):
            self.exact.append(tuple(candidate))
        else:
            self.numeric.append((description,
                                 tuple(float(v) for v in candidate)))


def _case_111(v) -> _Search:
    # b = c = d = e = 0
    P, Q, R, S, T, U, V, W = v
    s = _Search()
    a_ex, a_fl, blocked = _roots_of_square(-P / 2, "a^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    f_ex, f_fl, blocked = _roots_of_square(-W / 2, "f^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    for a in a_ex + a_fl:
        for f in f_ex + f_fl:
            s.emit(f"a^2 = {-P / 2}, f^2 = {-W / 2}",
                   (a, _ZERO, _ZERO, _ZERO, _ZERO, f))
    return s


def _case_112(v) -> _Search:
    # b = c = d = 0, e != 0; the constraints then force e = a
    P, Q, R, S, T, U, V, W = v
    s = _Search()
    a_ex, a_fl, blocked = _roots_of_square(-P / 2, "a^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    for a in a_ex + a_fl:
        if a == 0:
            continue
        f = -V / (6 * a)
        s.emit(f"a^2 = {-P / 2}", (a, _ZERO, _ZERO, _ZERO, a, f))
    return s


def _case_12(v) -> _Search:
    # b = 0, c = 0, d != 0
    P, Q, R, S, T, U, V, W = v
    s = _Search()
    a_ex, a_fl, blocked = _roots_of_square(-P / 2, "a^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    e_ex, e_fl, blocked = _roots_of_square(-U / 6, "e^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    for a in a_ex + a_fl:
        for e in e_ex + e_fl:
            if e != 0:
                f_options = [-V / (6 * e)]
            else:
                f_ex, f_fl, blocked = _roots_of_square(-W / 2, "f^2")
                if blocked:
                    s.blockers.append(blocked)
                    continue
                f_options = f_ex + f_fl
            for f in f_options:
                if a + e != 0:
                    d = -T / (2 * (a + e))
                elif f != 0:
                    d = (e * e - a * e) / f
                else:
                    continue
                if d == 0:
                    continue
                s.emit(f"a^2 = {-P / 2}, e^2 = {-U / 6}",
                       (a, _ZERO, _ZERO, d, e, f))
    return s


def _case_13(v) -> _Search:
    # b = 0, d = 0, c != 0; the constraints force e = a
    P, Q, R, S, T, U, V, W = v
    s = _Search()
    if P != 0:
        a_ex, a_fl, blocked = _roots_of_square(-P / 2, "a^2")
        if blocked:
            s.blockers.append(blocked)
            return s
        for a in a_ex + a_fl:
            c = -R / (6 * a)
            if c == 0:
                continue
            f = -V / (6 * a)
            s.emit(f"a^2 = {-P / 2}", (a, _ZERO, c, _ZERO, a, f))
    else:
        # a = e = 0, leaving S = -2cf and W = -2f^2
        f_ex, f_fl, blocked = _roots_of_square(-W / 2, "f^2")
        if blocked:
            s.blockers.append(blocked)
            return s
        for f in f_ex + f_fl:
            if f == 0:
                continue
            c = -S / (2 * f)
            if c == 0:
                continue
            s.emit(f"f^2 = {-W / 2}", (_ZERO, _ZERO, c, _ZERO, _ZERO, f))
    return s


def _case_21(v) -> _Search:
    # b != 0, d = 0; the constraints force e = 0
    P, Q, R, S, T, U, V, W = v
    s = _Search()
    b_ex, b_fl, blocked = _roots_of_square(-R / 6, "b^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    f_ex, f_fl, blocked = _roots_of_square(-W / 2, "f^2")
    if blocked:
        s.blockers.append(blocked)
        return s
    for b in b_ex + b_fl:
        if b == 0:
            continue
        a = -Q / (6 * b)
        for f in f_ex + f_fl:
            if b + f != 0:
                c = -S / (2 * (b + f))
            elif a != 0:
                c = 2 * b * b / a
            else:
                continue
            s.emit(f"b^2 = {-R / 6}, f^2 = {-W / 2}",
                   (a, b, c, _ZERO, _ZERO, f))
    return s


def _poly_add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else _ZERO) + (q[i] if i < len(q) else _ZERO)
            for i in range(n)]


def _poly_mul(p, q):
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi == 0:
            continue
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return out


def _poly_scale(p, k):
    return [k * coeff for coeff in p]


def _poly_eval_int(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(coeffs):
        acc = acc * x + coeff
    return acc


def _divisors(n: int):
    n = abs(n)
    out = []
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
    return sorted(out)


def _rational_roots(coeffs):
    """All rational roots of a polynomial with Fraction coefficients
    (ascending order).  Returns (roots, is_zero_polynomial)."""
    lcm = 1
    for coeff in coeffs:
        lcm = lcm * coeff.denominator // math.gcd(lcm, coeff.denominator)
    ints = [int(coeff * lcm) for coeff in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return [], True
    roots = set()
    while ints[0] == 0:
        ints.pop(0)
        roots.add(_ZERO)
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and _poly_eval_int(ints, cand) == 0:
                    roots.add(cand)
    return sorted(roots), False


def _float_roots(coeffs):
    fl = [float(c) for c in coeffs]
    while fl and fl[-1] == 0.0:
        fl.pop()
    if len(fl) < 2:
        return []
    out = []
    for z in np.roots(fl[::-1]):
        if abs(z.imag) <= 1e-9 * (1.0 + abs(z)):
            out.append(float(z.real))
    return out


def _quadratic_roots(qa: Fraction, qb: Fraction, qc: Fraction):
    """Roots of qa t^2 + qb t + qc: (exact list, float list)."""
    if qa == 0:
        if qb == 0:
            return [], []
        return [-qc / qb], []
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return [], []
    root = _exact_sqrt(disc)
    if root is not None:
        return [(-qb + root) / (2 * qa), (-qb - root) / (2 * qa)], []
    approx = math.sqrt(disc)
    return [], [(-float(qb) + approx) / (2 * float(qa)),
                (-float(qb) - approx) / (2 * float(qa))]


def _case_22_with_q(v, s: _Search) -> None:
    # c != 0 and Q != 0: everything reduces to a quadratic in beta = b^2
    P, Q, R, S, T, U, V, W = v
    if T == 0:
        s.blockers.append("Q != 0 with e = cd/b forces T != 0")
        return
    if 3 * R * T != Q * U or 9 * S * T != Q * V:
        s.blockers.append("ratios QU = 3RT and QV = 9ST fail for e = cd/b")
        return
    k0 = -Q * Q / 18
    k1 = T * R / Q - P
    qa = 9 * k1 * k1 + 12 * Q * T
    qb = 18 * k0 * k1 + 2 * Q * R * T
    qc = 9 * k0 * k0
    betas_exact, betas_float = _quadratic_roots(qa, qb, qc)

    def build(beta, b):
        gamma = (k0 + k1 * beta) / (2 * T)
        c = gamma / b
        if c == 0:
            return None
        d = 3 * b * T / Q
        e = 3 * c * T / Q
        a = -Q / (6 * b) - e
        f = -S / (2 * c) - b
        if d == 0:
            return None
        return (a, b, c, d, e, f)

    for beta in betas_exact:
        if beta <= 0:
            continue
        b_ex, b_fl, _ = _roots_of_square(beta, "b^2")
        for b in b_ex:
            candidate = build(beta, b)
            if candidate is not None:
                s.emit(f"b^2 = {beta}", candidate)
        for b in b_fl:
            candidate = build(float(beta), b)
            if candidate is not None:
                s.numeric.append((f"b^2 = {beta}", candidate))
    for beta in betas_float:
        if beta <= 0:
            continue
        root = math.sqrt(beta)
        for b in (root, -root):
            candidate = build(beta, b)
            if candidate is not None:
                s.numeric.append((f"b^2 = {beta!r}", candidate))
    if not betas_exact and not betas_float:
        s.blockers.append("no real b^2 solves the case 2.2 quadratic")


def _case_22_quartic(v, s: _Search) -> None:
    # c != 0, Q = 0, S != 0, V != 0: b^2 is a root of a short polynomial
    P, Q, R, S, T, U, V, W = v
    h = [-R * S / (2 * V), -3 * S / V]            # c^2 as a polynomial in beta
    g_poly = _poly_add(
        _poly_add(_poly_scale(_poly_mul(h, h), 4 * V / (3 * S)), [S * S]),
        _poly_mul([2 * W, Fraction(4)], h))
    target = _poly_add(_poly_mul(g_poly, g_poly),
                       _poly_scale(_poly_mul([_ZERO, Fraction(1)], h),
                                   -16 * S * S))
    roots, degenerate = _rational_roots(target)
    if degenerate:
        s.open_ended = True
        return

    def build(beta, b):
        g_val = _poly_eval_int(g_poly, beta) if isinstance(beta, Fraction) \
            else sum(float(cf) * beta ** i for i, cf in enumerate(g_poly))
        c = -g_val / (4 * S * b)
        if c == 0:
            return None
        e = c * V / (3 * S)
        d = b * V / (3 * S)
        a = -e
        f = -S / (2 * c) - b
        return (a, b, c, d, e, f)

    for beta in roots:
        if beta <= 0:
            continue
        b_ex, b_fl, _ = _roots_of_square(beta, "b^2")
        for b in b_ex:
            candidate = build(beta, b)
            if candidate is not None:
                s.emit(f"b^2 = {beta}", candidate)
        for b in b_fl:
            candidate = build(float(beta), b)
            if candidate is not None:
                s.numeric.append((f"b^2 = {beta}", candidate))
    exact_set = {float(r) for r in roots}
    for beta in _float_roots(target):
        if beta <= 0 or any(_near(beta, r) for r in exact_set):
            continue
        root = math.sqrt(beta)
        for b in (root, -root):
            candidate = build(beta, b)
            if candidate is not None:
                s.numeric.append((f"b^2 = {beta!r}", candidate))


_GRID = sorted({Fraction(sign * p, q) for p in range(1, 9) for q in range(1, 9)
                for sign in (1, -1)})


def _case_22_family(v, s: _Search) -> None:
    # c != 0, Q = 0, S = V = 0 (so f = -b), R = 3W: a one-parameter family;
    # only a bounded rational grid over b is searched, so this subcase can
    # stay open rather than be ruled out.
    P, Q, R, S, T, U, V, W = v
    s.open_ended = True
    if U == 0:
        return
    for b in _GRID:
        beta = b * b
        m = -R / 6 - beta
        c_sq = -6 * m * (beta + m) / U
        if c_sq <= 0:
            continue
        c = _exact_sqrt(c_sq)
        if c is None:
            continue
        for c_signed in (c, -c):
            e = m / c_signed
            d = m * b / (c_signed * c_signed)
            if d == 0:
                continue
            s.emit(f"b = {b}", (-e, b, c_signed, d, e, -b))


def _case_22(v) -> _Search:
    # b != 0, d != 0, e = cd/b
    P, Q, R, S, T, U, V, W = v
    s = _Search()

    # c = 0 branch: e = 0 and f = b
    if S == 0 and V == 0:
        b_ex, b_fl, blocked = _roots_of_square(-R / 6, "b^2")
        if blocked:
            s.blockers.append("c = 0 branch: " + blocked)
        else:
            for b in b_ex + b_fl:
                if b == 0:
                    continue
                a = -Q / (6 * b)
                d = -U / (6 * b)
                if d == 0:
                    continue
                s.emit(f"b^2 = {-R / 6}", (a, b, _ZERO, d, _ZERO, b))
    else:
        s.blockers.append("c = 0 branch needs S = 0 and V = 0")

    # c != 0 branches
    if Q != 0:
        _case_22_with_q(v, s)
    elif T != 0:
        s.blockers.append("Q = 0 with e = cd/b forces T = 0")
    elif U != 3 * P:
        s.blockers.append("Q = 0 with e = cd/b forces U = 3P")
    elif S != 0 and V != 0:
        if R * V != 3 * S * U:
            s.blockers.append("ratio RV = 3SU fails for e = cd/b")
        else:
            _case_22_quartic(v, s)
    elif S == 0 and V == 0:
        if R == 3 * W:
            _case_22_family(v, s)
        else:
            s.blockers.append("S = V = 0 with e = cd/b forces R = 3W")
    else:
        s.blockers.append("S and V must vanish together when e = cd/b")
    return s


_CASES = (
    ("1.1.1", _case_111),
    ("1.1.2", _case_112),
    ("1.2", _case_12),
    ("1.3", _case_13),
    ("2.1", _case_21),
    ("2.2", _case_22),
)


def classify_constant(A: CubicCoeffs) -> LinearizabilityReport:
    """Decide linearizability of an all-constant cubic system."""
    values = _require_constant(A)
    det = constant_determinant(A)
    if det != 0:
        return LinearizabilityReport(
            "NotLinearizable", "ConstantCase",
            failed_conditions=(("determinant", det),),
            notes="nonzero determinant leaves only the zero coefficient set")

    failed = []
    numeric_hits = []
    open_labels = []
    for label, generator in _CASES:
        search = generator(values)
        accepted = []
        for candidate in search.exact:
            if candidate not in accepted and _accepts(values, candidate):
                accepted.append(candidate)
        if accepted:
            return LinearizabilityReport(
                "Linearizable", "ConstantCase", case_label=label,
                branches=tuple(GeodesicCoeffs2(*g) for g in accepted))
        for description, candidate in search.numeric:
            if _accepts_numeric(values, candidate):
                numeric_hits.append((label, description, candidate))
        if search.open_ended:
            open_labels.append(label)
        reason = "; ".join(search.blockers) if search.blockers \
            else "no sign branch reproduces the input"
        failed.append((f"case {label}", reason))

    if numeric_hits:
        label, description, candidate = numeric_hits[0]
        rounded = tuple(round(v, 15) for v in candidate)
        return LinearizabilityReport(
            "Inconclusive", "ConstantCase", case_label=label,
            notes=f"LinearizableNumeric: case {label} branch with {description} "
                  f"validates to 12 significant digits at {rounded}; "
                  "the coefficients are irrational, so no exact branch exists")
    if open_labels:
        return LinearizabilityReport(
            "Inconclusive", "ConstantCase", case_label=open_labels[0],
            notes="bounded search of an under-determined coefficient family "
                  "was exhausted without a match; the family is not ruled out")
    return LinearizabilityReport(
        "NotLinearizable", "ConstantCase",
        failed_conditions=tuple(failed),
        notes="singular determinant, but every sign branch fails to "
              "reproduce the input")
