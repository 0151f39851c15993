"""Parser for the noncommutative grammar.

Grammar (whitespace separates letters)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (['*'] factor)*
    factor  := primary "'"* ('^' INT)?
    primary := NUMBER | 'x' INT? | 'a' INT | '(' expr ')'

Juxtaposition multiplies, so ``x2 x1 x2`` and ``x2*x1*x2`` are the same word.
The suffix ``'`` is the involution and is only legal in free_star mode. With
``num_a > 0`` the letters ``a1..a<num_a>`` come first in the variable order,
followed by ``x1..x<g>``.
"""

import re
from typing import List, Optional

from ..errors import ParseError
from ..poly.parser import Token
from .ncpoly import NcPoly
from .words import FREE_STAR, SYMMETRIC, check_mode

_TOKEN_RE = re.compile(
    r'(?:'
    r'(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)'
    r'|(?P<var>(?P<prefix>[xa])(?P<index>\d*))'
    r'|(?P<op>[-+*^()\'])'
    r')'
)


def tokenize(text: str) -> List[Token]:
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
            tokens.append(Token('number', match.group('number'), pos))
        elif match.group('var') is not None:
            tokens.append(Token('var', match.group('prefix') + (match.group('index') or '1'), pos))
        else:
            tokens.append(Token(match.group('op'), match.group('op'), pos))
        pos = match.end()
    tokens.append(Token('end', '', length))
    return tokens


class _NcParser:
    _FACTOR_START = ('number', 'var', '(')

    def __init__(self, text: str, num_vars: int, mode: str, num_a: int):
        self.text = text
        self.num_x = num_vars
        self.num_a = num_a
        self.total = num_vars + num_a
        self.mode = mode
        self.labels = [f'a{j + 1}' for j in range(num_a)] + [f'x{j + 1}' for j in range(num_vars)]
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.position, self.text)

    def parse(self) -> NcPoly:
        if self.current.kind == 'end':
            raise self.error('Empty polynomial')
        result = self.expr()
        if self.current.kind != 'end':
            raise self.error(f'Unexpected token {self.current.value!r}')
        return result.relabel(self.labels)

    def expr(self) -> NcPoly:
        negate = False
        if self.current.kind in ('+', '-'):
            negate = self.advance().kind == '-'
        result = self.term()
        if negate:
            result = -result
        while self.current.kind in ('+', '-'):
            op = self.advance().kind
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> NcPoly:
        result = self.factor()
        while True:
            if self.current.kind == '*':
                self.advance()
                result = result * self.factor()
            elif self.current.kind in self._FACTOR_START:
                result = result * self.factor()
            else:
                return result

    def factor(self) -> NcPoly:
        base = self.primary()
        while self.current.kind == "'":
            token = self.advance()
            if self.mode == SYMMETRIC:
                raise self.error('Involution suffix is only allowed in free_star mode', token)
            base = base.star()
        if self.current.kind == '^':
            self.advance()
            token = self.current
            if token.kind != 'number' or not token.value.isdigit():
                raise self.error('Exponent must be a non-negative integer', token)
            self.advance()
            base = base ** int(token.value)
        return base

    def primary(self) -> NcPoly:
        token = self.current
        if token.kind == 'number':
            self.advance()
            return NcPoly.constant(self.total, float(token.value), self.mode)
        if token.kind == 'var':
            self.advance()
            prefix, index = token.value[0], int(token.value[1:])
            limit = self.num_x if prefix == 'x' else self.num_a
            if not 1 <= index <= limit:
                raise self.error(f'Variable {token.value} out of range 1..{limit}', token)
            offset = self.num_a if prefix == 'x' else 0
            return NcPoly.variable(self.total, offset + index, self.mode)
        if token.kind == '(':
            self.advance()
            inner = self.expr()
            if self.current.kind != ')':
                raise self.error("Expected ')'")
            self.advance()
            return inner
        raise self.error(f'Unexpected token {token.value or "end of input"!r}', token)


def nc_parse(text: str, num_vars: int, mode: str = SYMMETRIC, num_a: int = 0) -> NcPoly:
    """Parse ``text`` into a canonical NcPoly over ``num_a + num_vars`` letters."""
    check_mode(mode)
    if num_vars < 1 or num_a < 0:
        raise ParseError(f'num_vars must be positive, got {num_vars}')
    return _NcParser(text, num_vars, mode, num_a).parse()


def infer_nc_vars(text: str) -> int:
    indices = [int(m or 1) for m in re.findall(r'x(\d*)', text)]
    return max(indices, default=1)


def infer_nc_mode(text: str) -> str:
    return FREE_STAR if "'" in text else SYMMETRIC
