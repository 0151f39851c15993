"""Evaluation of NC polynomials on tuples of matrices."""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..errors import DimensionError, InputError
from .ncpoly import NcPoly
from .words import SYMMETRIC, Word, check_mode, letter_star, letter_var


@dataclass(frozen=True)
class MatrixTuple:
    """g square matrices of a common size."""

    matrices: tuple
    mode: str = SYMMETRIC

    def __post_init__(self):
        check_mode(self.mode)
        mats = tuple(np.atleast_2d(np.asarray(m, dtype=float)) for m in self.matrices)
        if mats:
            n = mats[0].shape[0]
            for m in mats:
                if m.shape != (n, n):
                    raise DimensionError('Matrix tuple entries must be square of a common size')
                if self.mode == SYMMETRIC:
                    scale = 1.0 + float(np.max(np.abs(m)))
                    if np.max(np.abs(m - m.T)) > 1e-10 * scale:
                        raise InputError('Symmetric mode requires symmetric matrices')
        object.__setattr__(self, 'matrices', mats)

    @classmethod
    def of(cls, matrices: Sequence[Any], mode: str = SYMMETRIC) -> 'MatrixTuple':
        return cls(tuple(matrices), mode)

    @classmethod
    def random(cls, num_vars: int, size: int, rng: np.random.Generator,
               mode: str = SYMMETRIC, scale: float = 1.0) -> 'MatrixTuple':
        mats = []
        for _ in range(num_vars):
            m = rng.standard_normal((size, size)) * scale
            if mode == SYMMETRIC:
                m = (m + m.T) / 2.0
            mats.append(m)
        return cls(tuple(mats), mode)

    @property
    def num_vars(self) -> int:
        return len(self.matrices)

    @property
    def size(self) -> int:
        return self.matrices[0].shape[0] if self.matrices else 0

    def __len__(self) -> int:
        return len(self.matrices)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrices[index]

    def concat(self, other: 'MatrixTuple') -> 'MatrixTuple':
        if self.matrices and other.matrices and self.size != other.size:
            raise DimensionError('Cannot join tuples of different matrix sizes')
        return MatrixTuple(self.matrices + other.matrices, self.mode)

    def combine(self, other: 'MatrixTuple', a: float, b: float) -> 'MatrixTuple':
        """a·self + b·other, entrywise over the tuple."""
        if len(self) != len(other):
            raise DimensionError('Tuples have different lengths')
        return MatrixTuple(tuple(a * x + b * y for x, y in zip(self.matrices, other.matrices)),
                           self.mode)

    def to_dict(self) -> Dict[str, Any]:
        return {'mode': self.mode, 'matrices': [m.tolist() for m in self.matrices]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MatrixTuple':
        return cls(tuple(np.asarray(m, dtype=float) for m in data['matrices']),
                   data.get('mode', SYMMETRIC))


def _letter_image(code: int, X: MatrixTuple) -> np.ndarray:
    m = X[letter_var(code)]
    return m.T if letter_star(code) else m


def word_eval(word: Word, X: MatrixTuple,
              cache: Optional[Dict[Word, np.ndarray]] = None) -> np.ndarray:
    """Product of the letter images; ``cache`` memoizes shared prefixes."""
    if not word:
        return np.eye(X.size)
    if cache is not None and word in cache:
        return cache[word]
    value = word_eval(word[:-1], X, cache) @ _letter_image(word[-1], X)
    if cache is not None:
        cache[word] = value
    return value


def nc_eval(p: NcPoly, X: MatrixTuple) -> np.ndarray:
    """p(X) with x_j ↦ X_j and x_j* ↦ X_jᵀ."""
    if len(X) != p.num_vars:
        raise DimensionError(f'Polynomial has {p.num_vars} variables, tuple has {len(X)}')
    if p.mode == SYMMETRIC and X.mode != SYMMETRIC:
        X = MatrixTuple(X.matrices, SYMMETRIC)
    n = X.size
    out = np.zeros((n, n))
    cache: Dict[Word, np.ndarray] = {}
    for word, coeff in p.items():
        out += coeff * word_eval(word, X, cache)
    return out


def nc_quadratic_form(p: NcPoly, X: MatrixTuple, xi: np.ndarray) -> float:
    """⟨p(X)ξ, ξ⟩."""
    xi = np.asarray(xi, dtype=float).ravel()
    return float(xi @ nc_eval(p, X) @ xi)


def min_eig_at(p: NcPoly, X: MatrixTuple) -> float:
    value = nc_eval(p, X)
    return float(np.linalg.eigvalsh((value + value.T) / 2.0)[0])
