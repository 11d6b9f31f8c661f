"""Expression trees for transform verification.

Trees keep sums, products, quotients, integer powers, negation, and the
function nodes sin/cos/exp/log/sqrt without any simplification.  They exist
so that transforms like x*cos(y) can be differentiated by chain rule and
evaluated numerically; rational subtrees can be lowered to canonical
RationalExpr form with to_rational().
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import EvalDomainError, NotRational
from .rational_expr import RationalExpr


class ExprTree:
    """Base class; concrete nodes are frozen dataclasses below."""

    __slots__ = ()

    def __add__(self, other):
        return Sum(self, _coerce(other))

    def __radd__(self, other):
        return Sum(_coerce(other), self)

    def __sub__(self, other):
        return Sum(self, Negation(_coerce(other)))

    def __mul__(self, other):
        return Product(self, _coerce(other))

    def __rmul__(self, other):
        return Product(_coerce(other), self)

    def __truediv__(self, other):
        return Quotient(self, _coerce(other))

    def __neg__(self):
        return Negation(self)


def _coerce(v) -> ExprTree:
    if isinstance(v, ExprTree):
        return v
    if isinstance(v, (int, Fraction)):
        return Constant(Fraction(v))
    raise TypeError(f"cannot use {type(v).__name__} in an expression tree")


@dataclass(frozen=True)
class Constant(ExprTree):
    value: Fraction


@dataclass(frozen=True)
class Variable(ExprTree):
    name: str  # "x" or "y"


@dataclass(frozen=True)
class NamedConstant(ExprTree):
    """A declared symbolic constant, bound to a rational at evaluation time."""

    name: str


@dataclass(frozen=True)
class Sum(ExprTree):
    left: ExprTree
    right: ExprTree


@dataclass(frozen=True)
class Product(ExprTree):
    left: ExprTree
    right: ExprTree


@dataclass(frozen=True)
class Quotient(ExprTree):
    num: ExprTree
    den: ExprTree


@dataclass(frozen=True)
class Power(ExprTree):
    base: ExprTree
    exponent: int


@dataclass(frozen=True)
class Negation(ExprTree):
    operand: ExprTree


FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")


@dataclass(frozen=True)
class FunctionCall(ExprTree):
    func: str
    arg: ExprTree

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"unsupported function {self.func!r}")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def substitute_constants(tree: ExprTree, bindings: dict[str, Fraction]) -> ExprTree:
    """Replace named constants with rational values (missing names are kept)."""
    if isinstance(tree, NamedConstant):
        if tree.name in bindings:
            return Constant(Fraction(bindings[tree.name]))
        return tree
    if isinstance(tree, (Constant, Variable)):
        return tree
    if isinstance(tree, Sum):
        return Sum(substitute_constants(tree.left, bindings), substitute_constants(tree.right, bindings))
    if isinstance(tree, Product):
        return Product(substitute_constants(tree.left, bindings), substitute_constants(tree.right, bindings))
    if isinstance(tree, Quotient):
        return Quotient(substitute_constants(tree.num, bindings), substitute_constants(tree.den, bindings))
    if isinstance(tree, Power):
        return Power(substitute_constants(tree.base, bindings), tree.exponent)
    if isinstance(tree, Negation):
        return Negation(substitute_constants(tree.operand, bindings))
    if isinstance(tree, FunctionCall):
        return FunctionCall(tree.func, substitute_constants(tree.arg, bindings))
    raise TypeError(f"unknown node {type(tree).__name__}")


def diff_tree(tree: ExprTree, name: str) -> ExprTree:
    """Derivative of a tree with respect to x or y, by chain rule, unsimplified."""
    if name not in ("x", "y"):
        raise ValueError(f"unknown variable {name!r}")
    d = lambda t: diff_tree(t, name)
    if isinstance(tree, (Constant, NamedConstant)):
        return Constant(Fraction(0))
    if isinstance(tree, Variable):
        return Constant(Fraction(1 if tree.name == name else 0))
    if isinstance(tree, Sum):
        return Sum(d(tree.left), d(tree.right))
    if isinstance(tree, Product):
        return Sum(Product(d(tree.left), tree.right), Product(tree.left, d(tree.right)))
    if isinstance(tree, Quotient):
        num = Sum(Product(d(tree.num), tree.den), Negation(Product(tree.num, d(tree.den))))
        return Quotient(num, Power(tree.den, 2))
    if isinstance(tree, Power):
        n = tree.exponent
        if n == 0:
            return Constant(Fraction(0))
        return Product(Product(Constant(Fraction(n)), Power(tree.base, n - 1)), d(tree.base))
    if isinstance(tree, Negation):
        return Negation(d(tree.operand))
    if isinstance(tree, FunctionCall):
        arg, da = tree.arg, d(tree.arg)
        if tree.func == "sin":
            outer: ExprTree = FunctionCall("cos", arg)
        elif tree.func == "cos":
            outer = Negation(FunctionCall("sin", arg))
        elif tree.func == "exp":
            outer = FunctionCall("exp", arg)
        elif tree.func == "log":
            outer = Quotient(Constant(Fraction(1)), arg)
        else:  # sqrt
            outer = Quotient(Constant(Fraction(1)), Product(Constant(Fraction(2)), FunctionCall("sqrt", arg)))
        return Product(outer, da)
    raise TypeError(f"unknown node {type(tree).__name__}")


def eval_numeric(tree: ExprTree, x: float, y: float, constants: dict[str, Fraction] | None = None) -> float:
    """Evaluate to a float; raises EvalDomainError on poles and domain violations."""
    if isinstance(tree, Constant):
        return float(tree.value)
    if isinstance(tree, Variable):
        return x if tree.name == "x" else y
    if isinstance(tree, NamedConstant):
        if constants and tree.name in constants:
            return float(constants[tree.name])
        raise EvalDomainError(f"unbound constant {tree.name!r}", where=tree.name)
    if isinstance(tree, Sum):
        return eval_numeric(tree.left, x, y, constants) + eval_numeric(tree.right, x, y, constants)
    if isinstance(tree, Product):
        return eval_numeric(tree.left, x, y, constants) * eval_numeric(tree.right, x, y, constants)
    if isinstance(tree, Quotient):
        dv = eval_numeric(tree.den, x, y, constants)
        if dv == 0.0:
            raise EvalDomainError("division by zero", where=to_string(tree))
        return eval_numeric(tree.num, x, y, constants) / dv
    if isinstance(tree, Power):
        base = eval_numeric(tree.base, x, y, constants)
        if base == 0.0 and tree.exponent < 0:
            raise EvalDomainError("zero base with negative exponent", where=to_string(tree))
        return base**tree.exponent
    if isinstance(tree, Negation):
        return -eval_numeric(tree.operand, x, y, constants)
    if isinstance(tree, FunctionCall):
        v = eval_numeric(tree.arg, x, y, constants)
        if tree.func == "sin":
            return math.sin(v)
        if tree.func == "cos":
            return math.cos(v)
        if tree.func == "exp":
            return math.exp(v)
        if tree.func == "log":
            if v <= 0.0:
                raise EvalDomainError(f"log of non-positive value {v}", where=to_string(tree))
            return math.log(v)
        if v < 0.0:
            raise EvalDomainError(f"sqrt of negative value {v}", where=to_string(tree))
        return math.sqrt(v)
    raise TypeError(f"unknown node {type(tree).__name__}")


def to_rational(tree: ExprTree) -> RationalExpr:
    """Lower a function-free tree to canonical rational form.

    Raises NotRational if a sin/cos/exp/log/sqrt node or an unbound named
    constant is present.
    """
    if isinstance(tree, Constant):
        return RationalExpr.from_const(tree.value)
    if isinstance(tree, Variable):
        return RationalExpr.var(tree.name)
    if isinstance(tree, NamedConstant):
        raise NotRational(f"unbound constant {tree.name!r} has no rational form")
    if isinstance(tree, Sum):
        return to_rational(tree.left) + to_rational(tree.right)
    if isinstance(tree, Product):
        return to_rational(tree.left) * to_rational(tree.right)
    if isinstance(tree, Quotient):
        den = to_rational(tree.den)
        if den.is_zero:
            raise ZeroDivisionError("division by zero expression")
        return to_rational(tree.num) / den
    if isinstance(tree, Power):
        return to_rational(tree.base) ** tree.exponent
    if isinstance(tree, Negation):
        return -to_rational(tree.operand)
    if isinstance(tree, FunctionCall):
        raise NotRational(f"{tree.func} node has no rational normal form")
    raise TypeError(f"unknown node {type(tree).__name__}")


def is_rational(tree: ExprTree) -> bool:
    try:
        to_rational(tree)
    except (NotRational, ZeroDivisionError):
        return False
    return True


# -- printing ----------------------------------------------------------------

_PREC_SUM, _PREC_PROD, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def _prec(tree: ExprTree) -> int:
    if isinstance(tree, Sum):
        return _PREC_SUM
    if isinstance(tree, (Product, Quotient)):
        return _PREC_PROD
    if isinstance(tree, Power):
        return _PREC_POW
    if isinstance(tree, Negation):
        return _PREC_POW
    if isinstance(tree, Constant) and (tree.value < 0 or tree.value.denominator != 1):
        return _PREC_PROD
    return _PREC_ATOM


def _wrap(tree: ExprTree, parent_prec: int) -> str:
    s = to_string(tree)
    if _prec(tree) < parent_prec:
        return f"({s})"
    return s


def to_string(tree: ExprTree) -> str:
    """Grammar-compatible text; parse_expr(to_string(t)) reproduces the value."""
    if isinstance(tree, Constant):
        return str(tree.value)
    if isinstance(tree, (Variable, NamedConstant)):
        return tree.name
    if isinstance(tree, Sum):
        right = tree.right
        if isinstance(right, Negation):
            return f"{_wrap(tree.left, _PREC_SUM)} - {_wrap(right.operand, _PREC_PROD)}"
        return f"{_wrap(tree.left, _PREC_SUM)} + {_wrap(right, _PREC_SUM)}"
    if isinstance(tree, Product):
        return f"{_wrap(tree.left, _PREC_PROD)}*{_wrap(tree.right, _PREC_POW)}"
    if isinstance(tree, Quotient):
        return f"{_wrap(tree.num, _PREC_PROD)}/{_wrap(tree.den, _PREC_POW)}"
    if isinstance(tree, Power):
        return f"{_wrap(tree.base, _PREC_ATOM)}^{tree.exponent}"
    if isinstance(tree, Negation):
        return f"-{_wrap(tree.operand, _PREC_ATOM)}"
    if isinstance(tree, FunctionCall):
        return f"{tree.func}({to_string(tree.arg)})"
    raise TypeError(f"unknown node {type(tree).__name__}")
