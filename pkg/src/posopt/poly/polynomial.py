"""Sparse commutative multivariate polynomials with float coefficients."""

import math
from numbers import Number
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import DimensionError
from .monomial import Monomial

Scalar = Union[int, float]


def _format_coefficient(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


class Poly:
    """Polynomial p = Σ f_α x^α in a fixed number of variables.

    Instances are immutable; zero coefficients are never stored. The degree of
    the zero polynomial is −1.
    """

    __slots__ = ('num_vars', '_terms', '_hash')

    def __init__(self, num_vars: int, terms: Optional[Mapping] = None):
        if num_vars < 1:
            raise DimensionError(f'num_vars must be positive, got {num_vars}')
        clean: Dict[Monomial, float] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(mono, Monomial):
                mono = Monomial(mono)
            if len(mono) != num_vars:
                raise DimensionError(
                    f'Monomial {mono.exponents} does not have {num_vars} exponents'
                )
            value = clean.get(mono, 0.0) + float(coeff)
            if value == 0.0:
                clean.pop(mono, None)
            else:
                clean[mono] = value
        ordered = dict(sorted(clean.items(), key=lambda item: item[0].sort_key))
        object.__setattr__(self, 'num_vars', num_vars)
        object.__setattr__(self, '_terms', ordered)
        object.__setattr__(self, '_hash', None)

    def __setattr__(self, name, value):
        raise AttributeError('Poly is immutable')

    # Constructors

    @classmethod
    def zero(cls, num_vars: int) -> 'Poly':
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: Scalar) -> 'Poly':
        return cls(num_vars, {Monomial.one(num_vars): value})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> 'Poly':
        """Return x_index (1-based, matching the ``x<k>`` grammar)."""
        if not 1 <= index <= num_vars:
            raise DimensionError(f'Variable index {index} out of range 1..{num_vars}')
        return cls(num_vars, {Monomial.unit(num_vars, index - 1): 1.0})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Scalar = 1.0) -> 'Poly':
        return cls(len(mono), {mono: coeff})

    @classmethod
    def from_dict(cls, num_vars: int, data: Mapping[str, Scalar]) -> 'Poly':
        """Build from ``{"2,0": 1.0, ...}`` exponent-string keys."""
        return cls(num_vars, {Monomial.from_key_string(k): v for k, v in data.items()})

    # Basic properties

    @property
    def terms(self) -> Mapping[Monomial, float]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Union[Monomial, Sequence[int]]) -> float:
        if not isinstance(mono, Monomial):
            mono = Monomial(mono)
        return self._terms.get(mono, 0.0)

    def constant_term(self) -> float:
        return self._terms.get(Monomial.one(self.num_vars), 0.0)

    def monomials(self) -> List[Monomial]:
        return list(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, float]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coeff_norm(self) -> float:
        """Max-norm of the coefficient vector."""
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def is_even(self) -> bool:
        """True when every exponent of every term is even."""
        return all(e % 2 == 0 for m in self._terms for e in m.exponents)

    # Arithmetic

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            if other.num_vars != self.num_vars:
                raise DimensionError(
                    f'Polynomials in {self.num_vars} and {other.num_vars} variables'
                )
            return other
        if isinstance(other, Number):
            return Poly.constant(self.num_vars, float(other))
        return NotImplemented

    def __add__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0.0) + coeff
        return Poly(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly(self.num_vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'Poly':
        return (-self) + other

    def __mul__(self, other) -> 'Poly':
        if isinstance(other, Number):
            return Poly(self.num_vars, {m: c * float(other) for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, float] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, 0.0) + c1 * c2
        return Poly(self.num_vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> 'Poly':
        return self * (1.0 / float(scalar))

    def __pow__(self, exponent: int) -> 'Poly':
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('Only non-negative integer powers are supported')
        result = Poly.constant(self.num_vars, 1.0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = Poly.constant(self.num_vars, float(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, '_hash', hash((self.num_vars, tuple(self._terms.items())))
            )
        return self._hash

    def chop(self, tol: float) -> 'Poly':
        """Drop coefficients with absolute value ≤ tol."""
        return Poly(self.num_vars, {m: c for m, c in self._terms.items() if abs(c) > tol})

    def substitute(self, index: int, value: Scalar) -> 'Poly':
        """Fix variable x_index (1-based) to ``value``; the variable count is kept."""
        if not 1 <= index <= self.num_vars:
            raise DimensionError(f'Variable index {index} out of range 1..{self.num_vars}')
        terms: Dict[Monomial, float] = {}
        for mono, coeff in self._terms.items():
            exps = list(mono.exponents)
            power = exps[index - 1]
            exps[index - 1] = 0
            key = Monomial(exps)
            terms[key] = terms.get(key, 0.0) + coeff * float(value) ** power
        return Poly(self.num_vars, terms)

    # Evaluation

    def exponent_matrix(self) -> np.ndarray:
        """Exponents as a (terms × num_vars) integer array, canonical order."""
        if not self._terms:
            return np.zeros((0, self.num_vars), dtype=int)
        return np.array([m.exponents for m in self._terms], dtype=int)

    def coefficient_vector(self) -> np.ndarray:
        return np.array(list(self._terms.values()), dtype=float)

    def __call__(self, point: Sequence) -> float:
        return eval_poly(self, point)

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of a (N × num_vars) array."""
        pts = np.atleast_2d(np.asarray(points))
        if pts.shape[1] != self.num_vars:
            raise DimensionError(f'Expected points with {self.num_vars} coordinates')
        if not self._terms:
            return np.zeros(pts.shape[0])
        powers = np.prod(pts[:, None, :] ** self.exponent_matrix()[None, :, :], axis=2)
        return powers @ self.coefficient_vector()

    # Rendering

    def render(self) -> str:
        """Render in the input grammar, highest graded-lex term first."""
        if not self._terms:
            return '0'
        parts: List[str] = []
        for mono, coeff in reversed(list(self._terms.items())):
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            if mono.degree == 0:
                body = _format_coefficient(magnitude)
            elif magnitude == 1.0:
                body = mono.render()
            else:
                body = f'{_format_coefficient(magnitude)}*{mono.render()}'
            if not parts:
                parts.append(body if sign == '+' else f'-{body}')
            else:
                parts.append(f'{sign} {body}')
        return ' '.join(parts)

    def to_dict(self) -> Dict[str, float]:
        """Exponent-string keyed coefficient map."""
        return {m.key_string(): c for m, c in self._terms.items()}

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f'Poly({self.num_vars}, {self.render()!r})'


def eval_poly(p: Poly, point: Sequence) -> float:
    """Value of ``p`` at ``point`` (real or complex coordinates)."""
    pt = np.asarray(point)
    if pt.ndim != 1 or pt.shape[0] != p.num_vars:
        raise DimensionError(
            f'Point has {pt.size} coordinates, polynomial has {p.num_vars} variables'
        )
    total = 0.0
    for mono, coeff in p.items():
        term = coeff
        for x, e in zip(pt, mono.exponents):
            if e:
                term = term * x ** e
        total = total + term
    return total


def derive(p: Poly, var_index: int) -> Poly:
    """Partial derivative ∂p/∂x_var_index (1-based)."""
    if not 1 <= var_index <= p.num_vars:
        raise DimensionError(f'Variable index {var_index} out of range 1..{p.num_vars}')
    i = var_index - 1
    terms: Dict[Monomial, float] = {}
    for mono, coeff in p.items():
        e = mono.exponents[i]
        if e == 0:
            continue
        exps = list(mono.exponents)
        exps[i] = e - 1
        terms[Monomial(exps)] = coeff * e
    return Poly(p.num_vars, terms)


def gradient(p: Poly) -> List[Poly]:
    return [derive(p, i + 1) for i in range(p.num_vars)]


def poly_sum(polys: Iterable[Poly], num_vars: int) -> Poly:
    """Sum of an iterable of polynomials (zero when empty)."""
    terms: Dict[Monomial, float] = {}
    for q in polys:
        for mono, coeff in q.items():
            terms[mono] = terms.get(mono, 0.0) + coeff
    return Poly(num_vars, terms)


def sum_of_squares_poly(num_vars: int, power: int = 1) -> Poly:
    """Return (x_1² + ... + x_g²)^power."""
    base = poly_sum((Poly.variable(num_vars, i + 1) ** 2 for i in range(num_vars)), num_vars)
    return base ** power


def coefficient_residual(lhs: Poly, rhs: Poly) -> float:
    """Max-norm of the coefficient difference."""
    return (lhs - rhs).coeff_norm()


def is_close(p: Poly, q: Poly, tol: float = 1e-9) -> bool:
    return coefficient_residual(p, q) <= tol * (1.0 + max(p.coeff_norm(), q.coeff_norm()))


def isfinite(p: Poly) -> bool:
    return all(math.isfinite(c) for _, c in p.items())
