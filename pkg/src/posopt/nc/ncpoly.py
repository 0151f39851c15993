"""Polynomials in noncommuting variables with an involution."""

from numbers import Number
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..errors import DimensionError, InputError
from .words import (
    SYMMETRIC,
    Word,
    check_mode,
    default_labels,
    letter,
    render_word,
    star_word,
    word_key,
)


def _format(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


class NcPoly:
    """Canonical map word → nonzero coefficient.

    ``labels`` only affect rendering (a derivative in (x, h) renders its second
    half of variables as h's).
    """

    __slots__ = ('num_vars', 'mode', '_terms', 'labels')

    def __init__(self, num_vars: int, terms: Optional[Mapping[Word, float]] = None,
                 mode: str = SYMMETRIC, labels: Optional[Sequence[str]] = None):
        self.num_vars = num_vars
        self.mode = check_mode(mode)
        self.labels = list(labels) if labels is not None else default_labels(num_vars)
        clean: Dict[Word, float] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(int(c) for c in word)
            if any(c // 2 >= num_vars for c in word):
                raise DimensionError(f'Word {word} uses a variable beyond {num_vars}')
            if mode == SYMMETRIC and any(c & 1 for c in word):
                raise InputError('Starred letters are not allowed in symmetric mode')
            coeff = float(coeff)
            if coeff != 0.0:
                clean[word] = clean.get(word, 0.0) + coeff
        self._terms = {w: c for w, c in clean.items() if c != 0.0}

    # Constructors

    @classmethod
    def zero(cls, num_vars: int, mode: str = SYMMETRIC) -> 'NcPoly':
        return cls(num_vars, {}, mode)

    @classmethod
    def constant(cls, num_vars: int, value: float, mode: str = SYMMETRIC) -> 'NcPoly':
        return cls(num_vars, {(): value}, mode)

    @classmethod
    def variable(cls, num_vars: int, index: int, mode: str = SYMMETRIC,
                 star: bool = False) -> 'NcPoly':
        """x_index (1-based), or its adjoint."""
        if not 1 <= index <= num_vars:
            raise DimensionError(f'Variable index {index} out of range 1..{num_vars}')
        return cls(num_vars, {(letter(index - 1, star),): 1.0}, mode)

    @classmethod
    def word(cls, num_vars: int, word: Word, coeff: float = 1.0, mode: str = SYMMETRIC) -> 'NcPoly':
        return cls(num_vars, {word: coeff}, mode)

    # Accessors

    @property
    def terms(self) -> Dict[Word, float]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word: Word) -> float:
        return self._terms.get(tuple(word), 0.0)

    def words(self) -> List[Word]:
        return sorted(self._terms, key=word_key)

    def items(self) -> Iterator[Tuple[Word, float]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coeff_norm(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def relabel(self, labels: Sequence[str]) -> 'NcPoly':
        return NcPoly(self.num_vars, self._terms, self.mode, labels)

    def embed(self, num_vars: int, labels: Optional[Sequence[str]] = None) -> 'NcPoly':
        """Same polynomial viewed in a larger variable set (extra variables appended)."""
        if num_vars < self.num_vars:
            raise DimensionError('Cannot embed into fewer variables')
        return NcPoly(num_vars, self._terms, self.mode, labels)

    # Involution

    def star(self) -> 'NcPoly':
        return NcPoly(self.num_vars, {star_word(w, self.mode): c for w, c in self._terms.items()},
                      self.mode, self.labels)

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return (self - self.star()).coeff_norm() <= tol * (1.0 + self.coeff_norm())

    # Arithmetic

    def _coerce(self, other) -> 'NcPoly':
        if isinstance(other, NcPoly):
            if other.num_vars != self.num_vars or other.mode != self.mode:
                raise DimensionError('NC polynomials over different variables or modes')
            return other
        if isinstance(other, Number):
            return NcPoly.constant(self.num_vars, float(other), self.mode)
        return NotImplemented

    def __add__(self, other) -> 'NcPoly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0.0) + c
        return NcPoly(self.num_vars, terms, self.mode, self.labels)

    __radd__ = __add__

    def __neg__(self) -> 'NcPoly':
        return NcPoly(self.num_vars, {w: -c for w, c in self._terms.items()}, self.mode,
                      self.labels)

    def __sub__(self, other) -> 'NcPoly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'NcPoly':
        return (-self) + other

    def __mul__(self, other) -> 'NcPoly':
        if isinstance(other, Number):
            return NcPoly(self.num_vars, {w: c * float(other) for w, c in self._terms.items()},
                          self.mode, self.labels)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Word, float] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, 0.0) + c1 * c2
        return NcPoly(self.num_vars, terms, self.mode, self.labels)

    def __rmul__(self, other) -> 'NcPoly':
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> 'NcPoly':
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('Only non-negative integer powers are supported')
        result = NcPoly.constant(self.num_vars, 1.0, self.mode)
        for _ in range(exponent):
            result = result * self
        return result.relabel(self.labels)

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = NcPoly.constant(self.num_vars, float(other), self.mode)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return (self.num_vars, self.mode, self._terms) == (other.num_vars, other.mode, other._terms)

    def __hash__(self) -> int:
        return hash((self.num_vars, self.mode, tuple(sorted(self._terms.items()))))

    def chop(self, tol: float) -> 'NcPoly':
        return NcPoly(self.num_vars, {w: c for w, c in self._terms.items() if abs(c) > tol},
                      self.mode, self.labels)

    # Rendering

    def render(self) -> str:
        if not self._terms:
            return '0'
        parts = []
        for w in sorted(self._terms, key=word_key, reverse=True):
            c = self._terms[w]
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if not w:
                body = _format(mag)
            elif mag == 1.0:
                body = render_word(w, self.labels)
            else:
                body = f'{_format(mag)} {render_word(w, self.labels)}'
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            out += f' {sign} {body}'
        return out

    def to_dict(self) -> Dict[str, float]:
        ordered = sorted(self._terms.items(), key=lambda t: word_key(t[0]))
        return {render_word(w, self.labels): c for w, c in ordered}

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f'NcPoly({self.num_vars}, {self.render()!r}, mode={self.mode!r})'


def nc_sum(polys: Sequence[NcPoly], num_vars: int, mode: str = SYMMETRIC) -> NcPoly:
    terms: Dict[Word, float] = {}
    for p in polys:
        for w, c in p.items():
            terms[w] = terms.get(w, 0.0) + c
    return NcPoly(num_vars, terms, mode)
