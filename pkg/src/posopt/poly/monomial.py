"""Monomials x^α and graded lexicographic enumeration."""

import itertools
from functools import total_ordering
from typing import Iterable, List, Tuple


@total_ordering
class Monomial:
    """Exponent vector α of a commutative monomial x^α.

    Ordering is graded lexicographic: total degree first, then the exponent
    tuples compared lexicographically.
    """

    __slots__ = ('exponents', 'degree', '_hash')

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f'Negative exponent in monomial: {exps}')
        object.__setattr__(self, 'exponents', exps)
        object.__setattr__(self, 'degree', sum(exps))
        object.__setattr__(self, '_hash', hash(exps))

    def __setattr__(self, name, value):
        raise AttributeError('Monomial is immutable')

    @classmethod
    def one(cls, num_vars: int) -> 'Monomial':
        """Return the constant monomial 1."""
        return cls((0,) * num_vars)

    @classmethod
    def unit(cls, num_vars: int, index: int) -> 'Monomial':
        """Return x_index (0-based index)."""
        exps = [0] * num_vars
        exps[index] = 1
        return cls(exps)

    @property
    def num_vars(self) -> int:
        return len(self.exponents)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.degree, self.exponents)

    def __mul__(self, other: 'Monomial') -> 'Monomial':
        if self.num_vars != other.num_vars:
            raise ValueError('Monomials over different variable counts')
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def divides(self, other: 'Monomial') -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __truediv__(self, other: 'Monomial') -> 'Monomial':
        if not other.divides(self):
            raise ValueError(f'{other} does not divide {self}')
        return Monomial(a - b for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exponents == other.exponents

    def __lt__(self, other: 'Monomial') -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, index: int) -> int:
        return self.exponents[index]

    def render(self) -> str:
        """Render as ``x1^2*x2``; the constant monomial renders as ``1``."""
        factors = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                factors.append(f'x{i + 1}')
            elif e > 1:
                factors.append(f'x{i + 1}^{e}')
        return '*'.join(factors) if factors else '1'

    def key_string(self) -> str:
        """Comma-separated exponent string used in moment files, e.g. ``2,0,1``."""
        return ','.join(str(e) for e in self.exponents)

    @classmethod
    def from_key_string(cls, text: str) -> 'Monomial':
        return cls(int(part) for part in text.split(','))

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f'Monomial({self.exponents})'


def graded_lex_monomials(num_vars: int, max_degree: int, min_degree: int = 0) -> List[Monomial]:
    """All monomials in ``num_vars`` variables of degree min_degree..max_degree, ascending."""
    result = []
    for d in range(max(min_degree, 0), max_degree + 1):
        level = []
        for combo in itertools.combinations_with_replacement(range(num_vars), d):
            exps = [0] * num_vars
            for i in combo:
                exps[i] += 1
            level.append(Monomial(exps))
        level.sort()
        result.extend(level)
    return result
