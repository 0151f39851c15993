"""Moment sequences and their Hankel / Toeplitz / localizing matrices."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from ..errors import DimensionError, InputError
from ..poly import Monomial, Poly, graded_lex_monomials

REAL = 'real'
CIRCLE = 'circle'
MULTIVARIATE = 'multivariate'
KINDS = (REAL, CIRCLE, MULTIVARIATE)


@dataclass
class MomentSequence:
    """Real-line c_k, circle c_n (n ≥ 0, c_{−n} = c̄_n implied) or multivariate y_α."""

    kind: str
    values: Any
    num_vars: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f'Unknown moment kind {self.kind!r}')
        if self.kind == REAL:
            self.values = np.asarray(self.values, dtype=float).reshape(-1)
        elif self.kind == CIRCLE:
            self.values = np.asarray(self.values, dtype=complex).reshape(-1)
            if self.values.size and abs(self.values[0].imag) > 1e-12 * (1.0 + abs(self.values[0])):
                raise InputError('Circle moment c_0 must be real')
        else:
            self.values = {
                (k if isinstance(k, Monomial) else Monomial(k)): float(v)
                for k, v in dict(self.values).items()
            }
            if any(len(k) != self.num_vars for k in self.values):
                raise DimensionError(f'Moment index length differs from num_vars={self.num_vars}')

    # Constructors

    @classmethod
    def real(cls, values: Sequence[float]) -> 'MomentSequence':
        return cls(REAL, values)

    @classmethod
    def circle(cls, values: Sequence[complex]) -> 'MomentSequence':
        return cls(CIRCLE, values)

    @classmethod
    def circle_two_sided(cls, values: Sequence[complex], tol: float = 1e-12) -> 'MomentSequence':
        """From c_{−n}..c_n; raises InputError unless c_{−k} = c̄_k."""
        arr = np.asarray(values, dtype=complex).reshape(-1)
        if arr.size % 2 == 0:
            raise InputError('Two-sided circle moments need an odd count c_{-n}..c_n')
        n = arr.size // 2
        if np.abs(arr[::-1] - np.conj(arr)).max() > tol * (1.0 + np.abs(arr).max()):
            raise InputError('Circle moments violate c_{-k} = conj(c_k)')
        return cls(CIRCLE, arr[n:])

    @classmethod
    def multivariate(cls, num_vars: int, values: Mapping) -> 'MomentSequence':
        return cls(MULTIVARIATE, values, num_vars)

    @classmethod
    def from_atoms(cls, atoms: Sequence[float], weights: Sequence[float],
                   count: int) -> 'MomentSequence':
        """c_k = Σ w_i t_i^k for k < count."""
        t = np.asarray(atoms, dtype=float)
        w = np.asarray(weights, dtype=float)
        return cls.real([float(np.sum(w * t ** k)) for k in range(count)])

    @classmethod
    def from_points(cls, points: np.ndarray, weights: Sequence[float],
                    degree: int) -> 'MomentSequence':
        """y_α = Σ w_i x_i^α over graded-lex monomials of degree ≤ degree."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        w = np.asarray(weights, dtype=float)
        g = pts.shape[1]
        values = {
            mono: float(np.sum(w * np.prod(pts ** np.array(mono.exponents), axis=1)))
            for mono in graded_lex_monomials(g, degree)
        }
        return cls.multivariate(g, values)

    # Access

    def __len__(self) -> int:
        return len(self.values)

    @property
    def max_order(self) -> int:
        """Largest d with data through 2d."""
        if self.kind == REAL:
            return (self.values.size - 1) // 2
        if self.kind == CIRCLE:
            return self.values.size - 1
        degree = 0
        while all(m in self.values
                  for m in graded_lex_monomials(self.num_vars, 2 * degree + 2, 2 * degree + 1)):
            degree += 1
        return degree

    def value(self, index) -> complex:
        if self.kind == MULTIVARIATE:
            mono = index if isinstance(index, Monomial) else Monomial(index)
            if mono not in self.values:
                raise InputError(f'Moment y_{mono.key_string()} not available')
            return self.values[mono]
        k = int(index)
        if self.kind == CIRCLE and k < 0:
            return complex(np.conj(self.values[-k]))
        if k >= len(self.values):
            raise InputError(f'Moment c_{k} not available ({len(self.values)} given)')
        return self.values[k]

    def functional(self, p: Poly) -> float:
        """Riesz functional L(p) = Σ p_α y_α."""
        if self.kind == REAL:
            return float(sum(c * self.value(m.exponents[0]) for m, c in p.items()))
        if self.kind != MULTIVARIATE:
            raise InputError('Riesz functional needs real or multivariate moments')
        return float(sum(c * self.value(m) for m, c in p.items()))

    def scaled(self, factor: float) -> 'MomentSequence':
        if self.kind == MULTIVARIATE:
            scaled = {k: factor * v for k, v in self.values.items()}
            return MomentSequence(MULTIVARIATE, scaled, self.num_vars)
        return MomentSequence(self.kind, factor * self.values, self.num_vars)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == REAL:
            data: Any = self.values.tolist()
        elif self.kind == CIRCLE:
            data = [[float(v.real), float(v.imag)] for v in self.values]
        else:
            data = {m.key_string(): v for m, v in self.values.items()}
        return {'kind': self.kind, 'num_vars': self.num_vars, 'values': data}


@dataclass
class HankelMatrix:
    """Moment matrix of a given order; Toeplitz for circle data."""

    order: int
    kind: str
    matrix: np.ndarray
    basis: List[Monomial] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        m = self.matrix
        if np.iscomplexobj(m):
            entries = [[[v.real, v.imag] for v in row] for row in m]
        else:
            entries = m.tolist()
        return {
            'order': self.order,
            'kind': self.kind,
            'matrix': entries,
            'basis': [b.render() for b in self.basis],
        }


def moment_matrix(m: MomentSequence, order: int) -> HankelMatrix:
    """(c_{k+l}), (c_{n−m}) or (y_{α+β}) over the graded-lex basis of degree ≤ order."""
    if order < 0:
        raise InputError('Moment matrix order must be non-negative')
    if m.kind == REAL:
        if m.values.size < 2 * order + 1:
            raise InputError(f'Order {order} needs moments c_0..c_{2 * order}, got {m.values.size}')
        idx = np.add.outer(np.arange(order + 1), np.arange(order + 1))
        basis = graded_lex_monomials(1, order)
        return HankelMatrix(order, m.kind, m.values[idx].copy(), basis)
    if m.kind == CIRCLE:
        if m.values.size < order + 1:
            raise InputError(f'Order {order} needs moments c_0..c_{order}, got {m.values.size}')
        size = order + 1
        mat = np.empty((size, size), dtype=complex)
        for i in range(size):
            for j in range(size):
                mat[i, j] = m.value(i - j)
        return HankelMatrix(order, m.kind, mat)
    basis = graded_lex_monomials(m.num_vars, order)
    size = len(basis)
    mat = np.empty((size, size))
    for i, a in enumerate(basis):
        for j in range(i, size):
            mat[i, j] = mat[j, i] = m.value(a * basis[j])
    return HankelMatrix(order, m.kind, mat, basis)


def localizing_matrix(m: MomentSequence, p: Poly, order: int) -> HankelMatrix:
    """(Σ_γ p_γ y_{γ+α+β}) over monomials α, β of degree ≤ order."""
    if m.kind == CIRCLE:
        raise InputError('Localizing matrices need real-line or multivariate moments')
    num_vars = 1 if m.kind == REAL else m.num_vars
    if p.num_vars != num_vars:
        raise DimensionError(f'Polynomial has {p.num_vars} variables, moments have {num_vars}')
    basis = graded_lex_monomials(num_vars, order)
    size = len(basis)
    mat = np.zeros((size, size))
    for i, a in enumerate(basis):
        for j in range(i, size):
            ab = a * basis[j]
            total = 0.0
            for mono, coeff in p.items():
                key = mono * ab
                index = key if m.kind == MULTIVARIATE else key.exponents[0]
                total += coeff * float(m.value(index).real)
            mat[i, j] = mat[j, i] = total
    return HankelMatrix(order, m.kind, mat, basis)


def shifted_hankel(m: MomentSequence, order: Optional[int] = None) -> HankelMatrix:
    """(c_{k+l+1}) of the largest order the data supports (Stieltjes test)."""
    if m.kind != REAL:
        raise InputError('Shifted Hankel matrices need real-line moments')
    top = (m.values.size - 2) // 2
    size = top if order is None else min(order, top)
    if size < 0:
        raise InputError('Not enough moments for the shifted Hankel matrix')
    idx = np.add.outer(np.arange(size + 1), np.arange(size + 1)) + 1
    return HankelMatrix(size, m.kind, m.values[idx].copy(), graded_lex_monomials(1, size))
