"""Text form of polynomials and rational functions.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' nat)?
    atom   := number | ident | '(' expr ')'

Multiplication is always explicit, so ``s0*t1`` never collides with an
identifier.  A rational literal ``p/q`` is read as a division and folds to a
constant when lowered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra.polynomial import Polynomial
from .algebra.ratfunc import RationalFunction
from .errors import ParseError, PreconditionError

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<number>[0-9]+)|(?P<identifier>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<plus>\+)|(?P<minus>-)|(?P<star>\*)|(?P<slash>/)|(?P<caret>\^)"
    r"|(?P<lparen>\()|(?P<rparen>\))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    i = 0
    offset = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", offset)
        text = m.group()
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, text, offset))
        offset += len(text.encode("utf-8"))
        i = m.end()
    tokens.append(Token("end", "", offset))
    return tokens


# AST nodes: plain tuples tagged by kind, children after the tag.
#   ("const", Fraction) ("var", name) ("add", l, r) ("sub", l, r)
#   ("mul", l, r) ("div", l, r) ("pow", base, int) ("neg", child)
ExprAst = tuple


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            what = tok.text or "end of input"
            raise ParseError(f"expected {kind}, found {what!r}", tok.position)
        self.pos += 1
        return tok

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek().kind in ("plus", "minus"):
            op = "add" if self.take(self.peek().kind).kind == "plus" else "sub"
            node = (op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while self.peek().kind in ("star", "slash"):
            op = "mul" if self.take(self.peek().kind).kind == "star" else "div"
            node = (op, node, self.factor())
        return node

    def factor(self) -> ExprAst:
        if self.peek().kind == "minus":
            self.take("minus")
            return ("neg", self.factor())
        node = self.atom()
        if self.peek().kind == "caret":
            self.take("caret")
            tok = self.peek()
            if tok.kind != "number":
                raise ParseError("exponent must be a non-negative integer literal", tok.position)
            self.take("number")
            node = ("pow", node, int(tok.text))
        return node

    def atom(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "number":
            self.take("number")
            return ("const", Fraction(int(tok.text)))
        if tok.kind == "identifier":
            self.take("identifier")
            return ("var", tok.text)
        if tok.kind == "lparen":
            self.take("lparen")
            node = self.expr()
            self.take("rparen")
            return node
        what = tok.text or "end of input"
        raise ParseError(f"unexpected {what!r}", tok.position)


def parse_expr(src: str) -> ExprAst:
    parser = _Parser(tokenize(src))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.position)
    return node


def lower(ast: ExprAst) -> RationalFunction:
    kind = ast[0]
    if kind == "const":
        return RationalFunction(Polynomial.const(ast[1]))
    if kind == "var":
        return RationalFunction(Polynomial.var(ast[1]))
    if kind == "neg":
        return -lower(ast[1])
    if kind == "pow":
        return lower(ast[1]) ** ast[2]
    left, right = lower(ast[1]), lower(ast[2])
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    if kind == "mul":
        return left * right
    if kind == "div":
        if right.is_zero():
            raise PreconditionError("division by zero polynomial")
        return left / right
    raise ValueError(f"unknown node {kind!r}")


def parse_rational_function(src: str) -> RationalFunction:
    return lower(parse_expr(src))


def parse_polynomial(src: str) -> Polynomial:
    r = parse_rational_function(src)
    if not r.den.is_one():
        raise PreconditionError(f"not a polynomial: {src!r}")
    return r.num


def print_canonical(value: Union[Polynomial, RationalFunction]) -> str:
    return str(value)
