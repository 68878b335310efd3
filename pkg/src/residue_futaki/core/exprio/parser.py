"""Polynomial expression parser.

Grammar (whitespace and newlines are insignificant)::

    expr     := sign? term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | ident | '(' expr ')'
    rational := uint ('/' uint)?

There is no implicit multiplication and there are no function calls.
Products and powers are expanded eagerly, so their total degree is capped at
MAX_DEGREE and the term-by-term work of a single product at MAX_PRODUCT_WORK.
Every rejection is a ParseError carrying a 1-based line and column.
"""

import logging
import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from ...errors import ParseError
from ..arith import Poly

logger = logging.getLogger(__name__)

MAX_NESTING = 100
MAX_EXPONENT = 512
MAX_DEGREE = 512
MAX_PRODUCT_WORK = 250_000

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()])"
)
_RATIONAL_RE = re.compile(r"^\s*([-+]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class ExprSource:
    """Expression text plus the variables it may mention."""

    text: str
    declared_vars: tuple[str, ...]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        value = match.group()
        if kind == 'ws':
            for offset, ch in enumerate(value):
                if ch == '\n':
                    line += 1
                    line_start = pos + offset + 1
        else:
            tokens.append(_Token(kind, value, line, pos - line_start + 1))  # type: ignore[arg-type]
        pos = match.end()
    tokens.append(_Token('end', '', line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.index = 0
        self.variables = variables
        self.depth = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: _Token | None = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def expect_op(self, op: str) -> _Token:
        if self.current.kind != 'op' or self.current.text != op:
            raise self.error(f"expected {op!r}, found {self._describe(self.current)}")
        return self.advance()

    @staticmethod
    def _describe(token: _Token) -> str:
        return "end of input" if token.kind == 'end' else repr(token.text)

    def parse(self) -> Poly:
        result = self.expr()
        if self.current.kind != 'end':
            raise self.error(f"unexpected {self._describe(self.current)}")
        return result

    def expr(self) -> Poly:
        negate = False
        if self.current.kind == 'op' and self.current.text in '+-':
            negate = self.advance().text == '-'
        result = self.term()
        if negate:
            result = -result
        while self.current.kind == 'op' and self.current.text in ('+', '-'):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.current.kind == 'op' and self.current.text == '*':
            star = self.advance()
            result = self.multiply(result, self.factor(), star)
        return result

    def multiply(self, lhs: Poly, rhs: Poly, token: _Token) -> Poly:
        """Product of two parsed operands, bounded in degree and expansion work."""
        if lhs.is_zero() or rhs.is_zero():
            return lhs * rhs
        degree = lhs.total_degree() + rhs.total_degree()
        if degree > MAX_DEGREE:
            raise self.error(f"expanded degree {degree} exceeds {MAX_DEGREE}", token)
        if len(lhs) * len(rhs) > MAX_PRODUCT_WORK:
            raise self.error(f"expansion of {len(lhs)} by {len(rhs)} terms is too large", token)
        return lhs * rhs

    def power(self, base: Poly, exponent: int, token: _Token) -> Poly:
        if base.is_zero():
            return base ** exponent
        degree = base.total_degree() * exponent
        if degree > MAX_DEGREE:
            raise self.error(f"expanded degree {degree} exceeds {MAX_DEGREE}", token)
        result = Poly.constant(self.variables, 1)
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base, token)
            exponent >>= 1
            if exponent:
                base = self.multiply(base, base, token)
        return result

    def factor(self) -> Poly:
        base = self.base()
        if self.current.kind == 'op' and self.current.text == '^':
            self.advance()
            token = self.current
            if token.kind != 'int':
                raise self.error(f"expected an exponent, found {self._describe(token)}")
            self.advance()
            exponent = int(token.text)
            if exponent > MAX_EXPONENT:
                raise self.error(f"exponent {exponent} exceeds {MAX_EXPONENT}", token)
            base = self.power(base, exponent, token)
        return base

    def base(self) -> Poly:
        token = self.current
        if token.kind == 'int':
            self.advance()
            value = Fraction(int(token.text))
            if self.current.kind == 'op' and self.current.text == '/':
                self.advance()
                denom = self.current
                if denom.kind != 'int':
                    raise self.error(f"expected a denominator, found {self._describe(denom)}")
                self.advance()
                if int(denom.text) == 0:
                    raise self.error("zero denominator", denom)
                value = value / int(denom.text)
            return Poly.constant(self.variables, value)
        if token.kind == 'ident':
            self.advance()
            if token.text not in self.variables:
                raise self.error(f"undeclared identifier {token.text!r}", token)
            return Poly.variable(self.variables, token.text)
        if token.kind == 'op' and token.text == '(':
            self.advance()
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise self.error(f"nesting deeper than {MAX_NESTING}", token)
            inner = self.expr()
            self.expect_op(')')
            self.depth -= 1
            return inner
        raise self.error(f"unexpected {self._describe(token)}")


def parse_poly(source: ExprSource | str, variables: Sequence[str] | None = None) -> Poly:
    """Parse polynomial text over declared variables.

    Args:
        source: An ExprSource, or the expression text when ``variables`` is given.
        variables: Declared variable names (with a plain-text source).

    Returns:
        The parsed polynomial over exactly the declared variables.

    Raises:
        ParseError: Syntax error, undeclared identifier, or an expansion
            beyond MAX_DEGREE or MAX_PRODUCT_WORK.
    """
    if isinstance(source, ExprSource):
        text, declared = source.text, source.declared_vars
    else:
        if variables is None:
            raise TypeError("parse_poly() needs variables when given plain text")
        text, declared = source, tuple(variables)
    return _Parser(text, tuple(declared)).parse()


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign] int [/ uint]`` into a Fraction."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"invalid rational {text!r}", 1, 1)
    sign, numer, denom = match.groups()
    if denom is not None and int(denom) == 0:
        raise ParseError("zero denominator", 1, text.index('/') + 2)
    value = Fraction(int(numer), int(denom) if denom else 1)
    return -value if sign == '-' else value


def format_poly(p: Poly) -> str:
    """Canonical text (descending graded-lex); inverse of ``parse_poly``."""
    return str(p)
