"""Canonical rational functions in x and y.

A RationalExpr is a pair of polynomials num/den kept in a unique normal form:

* gcd(num, den) = 1 (including rational content),
* den has integer coefficients with gcd 1 and a positive graded-lex leading
  coefficient,
* num carries all remaining rational scaling,
* zero is 0/1.

Equality of canonical forms is therefore plain structural equality, which is
what makes "this residual is identically zero" decidable.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import EvalDomainError
from .polynomial import Polynomial, poly_gcd


class RationalExpr:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.one()
        if den.is_zero:
            raise ZeroDivisionError("rational expression with zero denominator")
        if num.is_zero:
            num, den = Polynomial.zero(), Polynomial.one()
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = num.divexact(g)
                den = den.divexact(g)
            scale, den_prim = den.primitive_positive()
            if scale != 1:
                num = num * (1 / scale)
                den = den_prim
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("RationalExpr is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_const(cls, c) -> RationalExpr:
        return cls(Polynomial.const(Fraction(c)))

    @classmethod
    def zero(cls) -> RationalExpr:
        return cls(Polynomial.zero())

    @classmethod
    def one(cls) -> RationalExpr:
        return cls(Polynomial.one())

    @classmethod
    def var(cls, name: str) -> RationalExpr:
        return cls(Polynomial.var(name))

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalExpr.from_const(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(v) -> RationalExpr:
        if isinstance(v, RationalExpr):
            return v
        if isinstance(v, (int, Fraction)):
            return RationalExpr.from_const(v)
        if isinstance(v, Polynomial):
            return RationalExpr(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to RationalExpr")

    def __add__(self, other) -> RationalExpr:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> RationalExpr:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalExpr(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other) -> RationalExpr:
        return self._coerce(other) - self

    def __neg__(self) -> RationalExpr:
        out = RationalExpr.__new__(RationalExpr)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __mul__(self, other) -> RationalExpr:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalExpr:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero rational expression")
        return RationalExpr(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> RationalExpr:
        return self._coerce(other) / self

    def __pow__(self, n: int) -> RationalExpr:
        if not isinstance(n, int):
            raise ValueError("rational expression powers must be integers")
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("zero to a negative power")
            return RationalExpr(self.den**(-n), self.num**(-n))
        return RationalExpr(self.num**n, self.den**n)

    def diff(self, name: str) -> RationalExpr:
        """Partial derivative (quotient rule, canonicalized)."""
        n, d = self.num, self.den
        return RationalExpr(n.diff(name) * d - n * d.diff(name), d * d)

    # -- evaluation ---------------------------------------------------------

    def eval_exact(self, x: Fraction, y: Fraction) -> Fraction:
        dv = self.den.eval_exact(x, y)
        if dv == 0:
            raise EvalDomainError(f"pole at ({x}, {y})", where=str(self))
        return self.num.eval_exact(x, y) / dv

    def eval_float(self, x: float, y: float) -> float:
        dv = self.den.eval_float(x, y)
        if dv == 0.0:
            raise EvalDomainError(f"pole at ({x}, {y})", where=str(self))
        return self.num.eval_float(x, y) / dv

    # -- serialization ----------------------------------------------------

    def __str__(self) -> str:
        if self.den == Polynomial.one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.terms) > 1 or "*" in den or "^" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalExpr({self})"


ZERO = RationalExpr.zero()
ONE = RationalExpr.one()
