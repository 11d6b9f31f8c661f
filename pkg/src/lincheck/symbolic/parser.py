"""Recursive-descent parser for coefficient and transform expressions.

Grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := signed ('^' exponent)*
    signed  := '-' signed | primary
    primary := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

* NUMBER is an integer or a decimal literal; decimals convert exactly
  (0.5 becomes 1/2).
* IDENT is x, y, a declared constant name, or one of sin/cos/exp/log/sqrt
  (which must be called).  Anything else raises UnknownSymbol.
* exponent is an integer literal with an optional sign: '^' accepts only
  literal integer exponents.
* Precedence: unary minus > '^' > '*','/' > '+','-', all left-associative,
  so ``-6/x^2`` is (-6)/(x^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError, UnknownSymbol
from .expr_tree import (
    Constant,
    ExprTree,
    FunctionCall,
    FUNCTIONS,
    NamedConstant,
    Negation,
    Power,
    Quotient,
    Product,
    Sum,
    Variable,
)
from .rational_expr import RationalExpr
from .expr_tree import to_rational


@dataclass
class _Token:
    kind: str  # NUMBER, IDENT, OP, END
    text: str
    pos: int


_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token("OP", ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            seen_dot = False
            while i < n and (text[i].isdigit() or (text[i] == "." and not seen_dot)):
                if text[i] == ".":
                    seen_dot = True
                i += 1
            tokens.append(_Token("NUMBER", text[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("IDENT", text[start:i], start))
            continue
        raise ParseError(
            f"unexpected character {ch!r} at position {i}", i,
            frozenset({"number", "identifier", "operator"}),
        )
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], constants: frozenset[str]):
        self.tokens = tokens
        self.pos = 0
        self.constants = constants

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == op:
            self.advance()
            return
        raise ParseError(
            f"expected {op!r} at position {tok.pos}, found {tok.text or 'end of input'!r}",
            tok.pos, frozenset({op}),
        )

    def parse(self) -> ExprTree:
        tree = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(
                f"unexpected {tok.text!r} at position {tok.pos}",
                tok.pos, frozenset({"+", "-", "*", "/", "^", "end of input"}),
            )
        return tree

    def expr(self) -> ExprTree:
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.advance()
                right = self.term()
                node = Sum(node, right) if tok.text == "+" else Sum(node, Negation(right))
            else:
                return node

    def term(self) -> ExprTree:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "*/":
                self.advance()
                right = self.factor()
                node = Product(node, right) if tok.text == "*" else Quotient(node, right)
            else:
                return node

    def factor(self) -> ExprTree:
        node = self.signed()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "^":
                self.advance()
                node = Power(node, self.exponent())
            else:
                return node

    def exponent(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        if tok.kind != "NUMBER" or "." in tok.text:
            raise ParseError(
                f"exponent must be an integer literal (position {tok.pos})",
                tok.pos, frozenset({"integer literal"}),
            )
        self.advance()
        return sign * int(tok.text)

    def signed(self) -> ExprTree:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            return Negation(self.signed())
        return self.primary()

    def primary(self) -> ExprTree:
        tok = self.advance()
        if tok.kind == "NUMBER":
            return Constant(Fraction(tok.text))
        if tok.kind == "IDENT":
            name = tok.text
            if name in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return FunctionCall(name, arg)
            if name in ("x", "y"):
                return Variable(name)
            if name in self.constants:
                return NamedConstant(name)
            raise UnknownSymbol(name, tok.pos)
        if tok.kind == "OP" and tok.text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(
            f"expected an expression at position {tok.pos}, found {tok.text or 'end of input'!r}",
            tok.pos, frozenset({"number", "identifier", "'('", "'-'"}),
        )


def parse_expr(text: str, constants: frozenset[str] | tuple[str, ...] = ()) -> ExprTree:
    """Parse expression text into a tree. ``constants`` declares extra names."""
    return _Parser(_tokenize(text), frozenset(constants)).parse()


def parse_rational(text: str, constants: frozenset[str] | tuple[str, ...] = ()) -> RationalExpr:
    """Parse and lower to canonical rational form in one step."""
    return to_rational(parse_expr(text, constants))
