"""Exact symbolic kernel: polynomials, rational functions, expression trees."""

from .polynomial import Polynomial, poly_gcd, set_term_cap, get_term_cap
from .rational_expr import RationalExpr
from .expr_tree import (
    Constant,
    ExprTree,
    FunctionCall,
    NamedConstant,
    Negation,
    Power,
    Product,
    Quotient,
    Sum,
    Variable,
    diff_tree,
    eval_numeric,
    is_rational,
    substitute_constants,
    to_rational,
    to_string,
)
from .parser import parse_expr, parse_rational

__all__ = [
    "Polynomial",
    "RationalExpr",
    "poly_gcd",
    "set_term_cap",
    "get_term_cap",
    "Constant",
    "ExprTree",
    "FunctionCall",
    "NamedConstant",
    "Negation",
    "Power",
    "Product",
    "Quotient",
    "Sum",
    "Variable",
    "diff_tree",
    "eval_numeric",
    "is_rational",
    "substitute_constants",
    "to_rational",
    "to_string",
    "parse_expr",
    "parse_rational",
]
