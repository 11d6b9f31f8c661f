"""Sparse bivariate polynomials over exact rationals.

A polynomial in x and y is a map from exponent pairs ``(i, j)`` to nonzero
``fractions.Fraction`` coefficients; the zero polynomial is the empty map.
Term order everywhere is graded lexicographic with x > y: terms compare by
total degree first, then by the exponent of x.

The module also implements an exact bivariate gcd (primitive pseudo-remainder
sequences over the integers), which is what keeps rational-function arithmetic
in canonical form elsewhere in the package.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from ..errors import ExpressionTooLarge

Term = tuple[int, int]

_DEFAULT_TERM_CAP = 200_000
_term_cap = int(os.environ.get("LINCHECK_TERM_CAP", _DEFAULT_TERM_CAP))


def set_term_cap(cap: int) -> None:
    """Set the global term-count guard for polynomial results."""
    global _term_cap
    if cap < 1:
        raise ValueError("term cap must be positive")
    _term_cap = cap


def get_term_cap() -> int:
    return _term_cap


def _grlex_key(t: Term) -> tuple[int, int]:
    return (t[0] + t[1], t[0])


def _check_cap(terms: dict) -> None:
    if len(terms) > _term_cap:
        raise ExpressionTooLarge(
            f"polynomial with {len(terms)} terms exceeds the cap of {_term_cap}"
        )


class Polynomial:
    """Immutable sparse polynomial in x, y with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Term, Fraction] | None = None):
        clean: dict[Term, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term ({i}, {j})")
                c = Fraction(c)
                if c != 0:
                    clean[(i, j)] = c
        _check_cap(clean)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> Polynomial:
        return cls({})

    @classmethod
    def one(cls) -> Polynomial:
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def const(cls, c) -> Polynomial:
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> Polynomial:
        if name == "x":
            return cls({(1, 0): Fraction(1)})
        if name == "y":
            return cls({(0, 1): Fraction(1)})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> Polynomial:
        return cls({(i, j): Fraction(c)})

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0, 0), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        k = 0 if name == "x" else 1
        return max(t[k] for t in self.terms)

    def leading_term(self) -> tuple[Term, Fraction]:
        """Graded-lex leading term (exponents, coefficient)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        t = max(self.terms, key=_grlex_key)
        return t, self.terms[t]

    def sorted_terms(self) -> list[tuple[Term, Fraction]]:
        """Terms in descending graded-lex order."""
        return [(t, self.terms[t]) for t in sorted(self.terms, key=_grlex_key, reverse=True)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        result = dict(self.terms)
        for t, c in other.terms.items():
            s = result.get(t)
            if s is None:
                result[t] = c
            else:
                s = s + c
                if s:
                    result[t] = s
                else:
                    del result[t]
        _check_cap(result)
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "terms", result)
        return out

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __neg__(self) -> Polynomial:
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "terms", {t: -c for t, c in self.terms.items()})
        return out

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return Polynomial.zero()
            out = Polynomial.__new__(Polynomial)
            object.__setattr__(out, "terms", {t: c * other for t, c in self.terms.items()})
            return out
        if not isinstance(other, Polynomial):
            return NotImplemented
        result: dict[Term, Fraction] = {}
        get = result.get
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                t = (i1 + i2, j1 + j2)
                s = get(t)
                if s is None:
                    result[t] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        result[t] = s
                    else:
                        del result[t]
        _check_cap(result)
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "terms", result)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, name: str) -> Polynomial:
        """Partial derivative with respect to x or y."""
        k = 0 if name == "x" else 1
        if name not in ("x", "y"):
            raise ValueError(f"unknown variable {name!r}")
        result: dict[Term, Fraction] = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[k]
            if e:
                t = (i - 1, j) if k == 0 else (i, j - 1)
                result[t] = c * e
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "terms", result)
        return out

    # -- evaluation ---------------------------------------------------------

    def eval_exact(self, x: Fraction, y: Fraction) -> Fraction:
        acc = Fraction(0)
        for (i, j), c in self.sorted_terms():
            acc += c * x**i * y**j
        return acc

    def eval_float(self, x: float, y: float) -> float:
        # Fixed summation order (descending graded-lex) keeps results
        # bit-for-bit reproducible between runs.
        acc = 0.0
        for (i, j), c in self.sorted_terms():
            acc += float(c) * x**i * y**j
        return acc

    # -- exact division -----------------------------------------------------

    def divexact(self, divisor: Polynomial) -> Polynomial:
        """Exact multivariate division; raises ValueError if not exact."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return Polynomial.zero()
        (di, dj), dc = divisor.leading_term()
        rem = dict(self.terms)
        quo: dict[Term, Fraction] = {}
        while rem:
            t = max(rem, key=_grlex_key)
            c = rem[t]
            qi, qj = t[0] - di, t[1] - dj
            if qi < 0 or qj < 0:
                raise ValueError("division is not exact")
            qc = c / dc
            quo[(qi, qj)] = qc
            for (i2, j2), c2 in divisor.terms.items():
                tt = (qi + i2, qj + j2)
                s = rem.get(tt)
                s = (s if s is not None else Fraction(0)) - qc * c2
                if s:
                    rem[tt] = s
                else:
                    rem.pop(tt, None)
        return Polynomial(quo)

    # -- content and integer form ---------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive_positive(self) -> tuple[Fraction, Polynomial]:
        """Split into ``scale * primitive`` with integer primitive part.

        The primitive part has integer coefficients with gcd 1 and a positive
        graded-lex leading coefficient; ``scale`` is a signed Fraction.
        """
        if self.is_zero:
            return Fraction(0), Polynomial.zero()
        c = self.content()
        _, lead = self.leading_term()
        if lead < 0:
            c = -c
        prim = Polynomial({t: v / c for t, v in self.terms.items()})
        return c, prim

    # -- serialization ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for (i, j), c in self.sorted_terms():
            factors = []
            if i == 1:
                factors.append("x")
            elif i > 1:
                factors.append(f"x^{i}")
            if j == 1:
                factors.append("y")
            elif j > 1:
                factors.append(f"y^{j}")
            mag = abs(c)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# Exact gcd via primitive pseudo-remainder sequences.
#
# Polynomials are recast with integer coefficients as univariate in y over
# Z[x].  A Z[x] element is a sparse dict {exponent: int}.
# ---------------------------------------------------------------------------

ZX = dict  # {int: int}, never containing zero values


def _zx_is_zero(p: ZX) -> bool:
    return not p


def _zx_degree(p: ZX) -> int:
    return max(p) if p else -1


def _zx_mul(p: ZX, q: ZX) -> ZX:
    out: ZX = {}
    for i, a in p.items():
        for j, b in q.items():
            k = i + j
            s = out.get(k, 0) + a * b
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _zx_add(p: ZX, q: ZX) -> ZX:
    out = dict(p)
    for i, b in q.items():
        s = out.get(i, 0) + b
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def _zx_neg(p: ZX) -> ZX:
    return {i: -a for i, a in p.items()}


def _zx_scale(p: ZX, k: int) -> ZX:
    if k == 0:
        return {}
    return {i: a * k for i, a in p.items()}


def _zx_content(p: ZX) -> int:
    g = 0
    for a in p.values():
        g = math.gcd(g, abs(a))
    return g


def _zx_primitive(p: ZX) -> ZX:
    if not p:
        return {}
    g = _zx_content(p)
    if p[_zx_degree(p)] < 0:
        g = -g
    return {i: a // g for i, a in p.items()}


def _zx_divexact(p: ZX, d: ZX) -> ZX:
    """Exact univariate division in Z[x] (raises if not exact)."""
    if not d:
        raise ZeroDivisionError
    if not p:
        return {}
    dd = _zx_degree(d)
    dl = d[dd]
    rem = dict(p)
    quo: ZX = {}
    while rem:
        rd = _zx_degree(rem)
        if rd < dd:
            raise ValueError("Z[x] division not exact")
        c = rem[rd]
        if c % dl:
            raise ValueError("Z[x] division not exact")
        q = c // dl
        quo[rd - dd] = q
        for i, a in d.items():
            k = rd - dd + i
            s = rem.get(k, 0) - q * a
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quo


def _zx_gcd(p: ZX, q: ZX) -> ZX:
    """Primitive gcd in Z[x] via a primitive pseudo-remainder sequence."""
    if not p:
        return _zx_primitive(q) if q else {}
    if not q:
        return _zx_primitive(p)
    cp, cq = _zx_content(p), _zx_content(q)
    a, b = _zx_primitive(p), _zx_primitive(q)
    if _zx_degree(a) < _zx_degree(b):
        a, b = b, a
    while b:
        # pseudo-remainder of a by b
        da, db = _zx_degree(a), _zx_degree(b)
        lead = b[db]
        r = dict(a)
        while r and _zx_degree(r) >= db:
            rd = _zx_degree(r)
            rl = r[rd]
            # r = lead*r - rl * x^(rd-db) * b
            r = _zx_add(_zx_scale(r, lead), _zx_scale({rd - db + i: v for i, v in b.items()}, -rl))
        a, b = b, _zx_primitive(r)
    g = math.gcd(cp, cq)
    return _zx_mul({0: g}, a) if g != 1 else a


# -- (Z[x])[y] layer --------------------------------------------------------

ZXY = dict  # {int (y-degree): ZX}, never containing zero ZX values


def _to_zxy(p: Polynomial) -> tuple[Fraction, ZXY]:
    """Scale to integer coefficients, return (scale, recursive form)."""
    scale, prim = p.primitive_positive()
    out: ZXY = {}
    for (i, j), c in prim.terms.items():
        row = out.setdefault(j, {})
        row[i] = int(c)
    return scale, out


def _from_zxy(p: ZXY) -> Polynomial:
    terms: dict[Term, Fraction] = {}
    for j, row in p.items():
        for i, a in row.items():
            terms[(i, j)] = Fraction(a)
    return Polynomial(terms)


def _zxy_degree(p: ZXY) -> int:
    return max(p) if p else -1


def _zxy_content(p: ZXY) -> ZX:
    g: ZX = {}
    for row in p.values():
        g = _zx_gcd(g, row)
        if _zx_degree(g) == 0 and abs(g.get(0, 0)) == 1:
            return {0: 1}
    return g


def _zxy_scale_zx(p: ZXY, f: ZX) -> ZXY:
    return {j: _zx_mul(row, f) for j, row in p.items()} if f else {}


def _zxy_divexact_zx(p: ZXY, f: ZX) -> ZXY:
    return {j: _zx_divexact(row, f) for j, row in p.items()}


def _zxy_sub(p: ZXY, q: ZXY) -> ZXY:
    out = {j: dict(row) for j, row in p.items()}
    for j, row in q.items():
        merged = _zx_add(out.get(j, {}), _zx_neg(row))
        if merged:
            out[j] = merged
        else:
            out.pop(j, None)
    return out


def _zxy_pseudo_rem(a: ZXY, b: ZXY) -> ZXY:
    """Pseudo-remainder of a by b with respect to y."""
    db = _zxy_degree(b)
    lead_b = b[db]
    r = {j: dict(row) for j, row in a.items()}
    while r and _zxy_degree(r) >= db:
        dr = _zxy_degree(r)
        lead_r = r[dr]
        shifted = {j + dr - db: _zx_mul(row, lead_r) for j, row in b.items()}
        r = _zxy_sub(_zxy_scale_zx(r, lead_b), shifted)
    return r


def _zxy_primitive(p: ZXY) -> ZXY:
    if not p:
        return {}
    c = _zxy_content(p)
    if _zx_degree(c) == 0 and abs(c.get(0, 0)) == 1:
        prim = p if c.get(0) == 1 else _zxy_scale_zx(p, {0: -1}) if c.get(0) == -1 else p
    else:
        prim = _zxy_divexact_zx(p, c)
    # normalize sign of the leading (in y) coefficient's leading (in x) term
    lead = prim[_zxy_degree(prim)]
    if lead[_zx_degree(lead)] < 0:
        prim = _zxy_scale_zx(prim, {0: -1})
    return prim


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact gcd of two bivariate polynomials.

    The result is primitive with integer coefficients and a positive
    graded-lex leading coefficient; it is unique up to that normalization.
    Uses primitive pseudo-remainder sequences in y over Z[x], with contents
    handled by a univariate Z[x] gcd.
    """
    if p.is_zero and q.is_zero:
        return Polynomial.zero()
    if p.is_zero:
        return q.primitive_positive()[1]
    if q.is_zero:
        return p.primitive_positive()[1]
    _, a = _to_zxy(p)
    _, b = _to_zxy(q)
    ca, cb = _zxy_content(a), _zxy_content(b)
    pa, pb = _zxy_divexact_zx(a, ca), _zxy_divexact_zx(b, cb)
    if _zxy_degree(pa) < _zxy_degree(pb):
        pa, pb = pb, pa
    while pb:
        r = _zxy_pseudo_rem(pa, pb)
        pa, pb = pb, _zxy_primitive(r)
    gc = _zx_gcd(ca, cb)
    g = _zxy_scale_zx(_zxy_primitive(pa), gc)
    out = _from_zxy(g)
    # ensure positive graded-lex leading coefficient
    _, lead = out.leading_term()
    if lead < 0:
        out = -out
    return out
