"""Parser for the commutative polynomial grammar.

Grammar (whitespace ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := primary ('^' INT)?
    primary := NUMBER | 'x' INT | '(' expr ')'

Example: ``3*x1^2*x2 - 1.5*x2 + 2``.
"""

import re
from typing import List, NamedTuple

from ..errors import ParseError
from .polynomial import Poly

_TOKEN_RE = re.compile(
    r'\s*(?:'
    r'(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)'
    r'|(?P<var>x(?P<index>\d+))'
    r'|(?P<op>[-+*^()])'
    r')'
)


class Token(NamedTuple):
    kind: str
    value: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens, reporting the position of the first bad character."""
    tokens: List[Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f'Unexpected character {text[pos]!r}', pos, text)
        if match.group('number') is not None:
            tokens.append(Token('number', match.group('number'), match.start('number')))
        elif match.group('var') is not None:
            tokens.append(Token('var', match.group('index'), match.start('var')))
        else:
            tokens.append(Token(match.group('op'), match.group('op'), match.start('op')))
        pos = match.end()
    tokens.append(Token('end', '', length))
    return tokens


class _Parser:
    """Recursive-descent parser producing Poly values."""

    def __init__(self, text: str, num_vars: int):
        self.text = text
        self.num_vars = num_vars
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise ParseError(f'Expected {kind!r}, found {self.current.value or "end of input"!r}',
                             self.current.position, self.text)
        return self.advance()

    def parse(self) -> Poly:
        if self.current.kind == 'end':
            raise ParseError('Empty polynomial', 0, self.text)
        result = self.expr()
        if self.current.kind != 'end':
            raise ParseError(f'Unexpected token {self.current.value!r}',
                             self.current.position, self.text)
        return result

    def expr(self) -> Poly:
        sign = 1.0
        if self.current.kind in ('+', '-'):
            sign = -1.0 if self.advance().kind == '-' else 1.0
        result = self.term() * sign
        while self.current.kind in ('+', '-'):
            op = self.advance().kind
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.current.kind == '*':
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.primary()
        if self.current.kind == '^':
            self.advance()
            token = self.expect('number')
            if not token.value.isdigit():
                raise ParseError('Exponent must be a non-negative integer',
                                 token.position, self.text)
            base = base ** int(token.value)
        return base

    def primary(self) -> Poly:
        token = self.current
        if token.kind == 'number':
            self.advance()
            return Poly.constant(self.num_vars, float(token.value))
        if token.kind == 'var':
            self.advance()
            index = int(token.value)
            if not 1 <= index <= self.num_vars:
                raise ParseError(f'Variable x{index} out of range 1..{self.num_vars}',
                                 token.position, self.text)
            return Poly.variable(self.num_vars, index)
        if token.kind == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        raise ParseError(f'Unexpected token {token.value or "end of input"!r}',
                         token.position, self.text)


def parse_poly(text: str, num_vars: int) -> Poly:
    """Parse ``text`` into a canonical Poly in ``num_vars`` variables."""
    if num_vars < 1:
        raise ParseError(f'num_vars must be positive, got {num_vars}')
    return _Parser(text, num_vars).parse()


def infer_num_vars(text: str) -> int:
    """Largest variable index mentioned in ``text`` (at least 1)."""
    indices = [int(m) for m in re.findall(r'x(\d+)', text)]
    return max(indices, default=1)
