"""Left ideals: membership and the truncated quotient F/I."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import lsqr

from ..errors import DimensionError, InputError, SizingError
from .ncpoly import NcPoly
from .words import Word, alphabet, render_word, word_count, words_up_to

logger = logging.getLogger(__name__)

MAX_QUOTIENT_WORDS = 100_000
DENSE_LIMIT = 4_000


def _check_generators(generators: Sequence[NcPoly]) -> Tuple[int, str]:
    if not generators:
        raise InputError('At least one generator is required')
    g, mode = generators[0].num_vars, generators[0].mode
    if any(p.num_vars != g or p.mode != mode for p in generators):
        raise DimensionError('Generators must share variables and mode')
    return g, mode


def _word_index(num_vars: int, d: int, mode: str) -> Tuple[List[Word], Dict[Word, int]]:
    count = word_count(num_vars, d, mode)
    if count > MAX_QUOTIENT_WORDS:
        raise SizingError(f'{count} words of degree ≤ {d} exceed the cap of {MAX_QUOTIENT_WORDS}')
    words = words_up_to(num_vars, d, mode)
    return words, {w: i for i, w in enumerate(words)}


def _ideal_matrix(generators: Sequence[NcPoly], d: int,
                  index: Dict[Word, int]) -> Tuple[sparse.csc_matrix, List[Tuple[int, Word]]]:
    """Columns are the vectors w·p_i with deg w + deg p_i ≤ d."""
    rows, cols, vals = [], [], []
    labels: List[Tuple[int, Word]] = []
    for i, p in enumerate(generators):
        if p.is_zero():
            continue
        for w in words_up_to(p.num_vars, d - p.degree, p.mode):
            col = len(labels)
            labels.append((i, w))
            for u, c in p.items():
                rows.append(index[w + u])
                cols.append(col)
                vals.append(c)
    shape = (len(index), len(labels))
    return sparse.csc_matrix((vals, (rows, cols)), shape=shape), labels


def _vector(p: NcPoly, index: Dict[Word, int]) -> np.ndarray:
    v = np.zeros(len(index))
    for w, c in p.items():
        v[index[w]] = c
    return v


def _least_squares(matrix: sparse.csc_matrix, rhs: np.ndarray) -> np.ndarray:
    if matrix.shape[1] == 0:
        return np.zeros(0)
    if matrix.shape[0] * matrix.shape[1] <= DENSE_LIMIT ** 2:
        solution, *_ = np.linalg.lstsq(matrix.toarray(), rhs, rcond=None)
        return solution
    return lsqr(matrix, rhs, atol=1e-14, btol=1e-14, iter_lim=10 * matrix.shape[1])[0]


@dataclass
class IdealMembership:
    member: bool
    residual: float
    degree: int
    cofactors: Optional[List[NcPoly]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'member': self.member,
            'residual': self.residual,
            'degree': self.degree,
            'cofactors': None if self.cofactors is None else [r.render() for r in self.cofactors],
        }


def left_ideal_member(q: NcPoly, generators: Sequence[NcPoly], d: int) -> IdealMembership:
    """Decide q ∈ F·p_1 + … + F·p_m within words of degree ≤ d.

    A member always comes with cofactors r_i satisfying Σ r_i p_i = q to 1e-9.
    Starred generators are handled as plain linear algebra.
    """
    g, mode = _check_generators(generators)
    if q.num_vars != g or q.mode != mode:
        raise DimensionError('q and the generators must share variables and mode')
    if q.degree > d:
        raise InputError(f'Degree cap {d} is below deg q = {q.degree}')
    if d < max(p.degree for p in generators):
        raise InputError(f'Degree cap {d} is below the largest generator degree')

    _, index = _word_index(g, d, mode)
    matrix, labels = _ideal_matrix(generators, d, index)
    target = _vector(q, index)
    coeffs = _least_squares(matrix, target)
    cut = 1e-12 * (1.0 + float(np.max(np.abs(coeffs)))) if coeffs.size else 0.0
    per_gen: List[Dict[Word, float]] = [{} for _ in generators]
    for (i, w), c in zip(labels, coeffs):
        if abs(c) > cut:
            per_gen[i][w] = per_gen[i].get(w, 0.0) + float(c)
    cofactors = [NcPoly(g, terms, mode, q.labels) for terms in per_gen]
    total = NcPoly.zero(g, mode)
    for r, p in zip(cofactors, generators):
        total = total + r * p
    residual = (total - q).coeff_norm()
    member = residual <= 1e-9 * (1.0 + q.coeff_norm())
    logger.debug(f'Left ideal membership at degree {d}: residual {residual:.2e}, member={member}')
    return IdealMembership(member, float(residual), d, cofactors if member else None)


@dataclass
class QuotientBasis:
    """Degree-≤d truncation of F/I with a linear reduction map.

    ``reduction`` maps a coefficient vector over ``words`` to coordinates over
    ``basis``; it annihilates every w·p_i of degree ≤ d.
    """

    generators: List[NcPoly]
    degree: int
    num_vars: int
    mode: str
    words: List[Word]
    basis: List[Word]
    reduction: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def reduce(self, p: NcPoly) -> np.ndarray:
        if p.degree > self.degree:
            raise InputError(f'Polynomial degree {p.degree} exceeds the quotient cap {self.degree}')
        index = {w: i for i, w in enumerate(self.words)}
        return self.reduction @ _vector(p, index)

    def reduce_word(self, word: Word) -> np.ndarray:
        return self.reduction[:, self.words.index(word)]

    def to_dict(self) -> Dict[str, Any]:
        labels = self.generators[0].labels if self.generators else []
        return {
            'degree': self.degree,
            'basis': [render_word(w, labels) for w in self.basis],
            'generators': [p.render() for p in self.generators],
        }


def quotient_basis(generators: Sequence[NcPoly], d: int, tol: float = 1e-9) -> QuotientBasis:
    """Choose word classes spanning F_d / I_d greedily in graded-lex order."""
    g, mode = _check_generators(generators)
    if d < max(p.degree for p in generators):
        raise InputError(f'Degree cap {d} is below the largest generator degree')
    words, index = _word_index(g, d, mode)
    matrix, _ = _ideal_matrix(generators, d, index)
    dense = matrix.toarray()
    if dense.shape[1]:
        u, s, _ = np.linalg.svd(dense, full_matrices=False)
        rank = int(np.sum(s > tol * max(float(s[0]), 1.0))) if s.size else 0
        ortho = u[:, :rank]
    else:
        rank = 0
        ortho = np.zeros((len(words), 0))

    chosen: List[int] = []
    columns = [ortho[:, j] for j in range(rank)]
    for i in range(len(words)):
        r = np.zeros(len(words))
        r[i] = 1.0
        for col in columns:
            r -= (col @ r) * col
        norm = float(np.linalg.norm(r))
        if norm > tol:
            columns.append(r / norm)
            chosen.append(i)
        if len(columns) == len(words):
            break

    full = np.zeros((len(words), rank + len(chosen)))
    full[:, :rank] = ortho
    for j, i in enumerate(chosen):
        full[i, rank + j] = 1.0
    reduction = np.linalg.solve(full, np.eye(len(words)))[rank:, :]
    logger.debug(f'Quotient at degree {d}: {len(words)} words, ideal rank {rank}, '
                 f'dimension {len(chosen)}')
    return QuotientBasis(list(generators), d, g, mode, words, [words[i] for i in chosen], reduction)


def quotient_operators(qb: QuotientBasis) -> Dict[int, np.ndarray]:
    """Truncated left multiplications X_ℓ[w] = [ℓ w] (zero on top-degree classes)."""
    n = qb.dimension
    ops = {}
    for code in alphabet(qb.num_vars, qb.mode):
        op = np.zeros((n, n))
        for j, w in enumerate(qb.basis):
            if len(w) + 1 <= qb.degree:
                op[:, j] = qb.reduce_word((code,) + w)
        ops[code] = op
    return ops


def quotient_action(p: NcPoly, qb: QuotientBasis,
                    ops: Optional[Dict[int, np.ndarray]] = None) -> np.ndarray:
    """p(X)[1] for the quotient operators X."""
    ops = ops if ops is not None else quotient_operators(qb)
    one = qb.reduce_word(())
    out = np.zeros(qb.dimension)
    for word, coeff in p.items():
        v = one
        for code in reversed(word):
            v = ops[code] @ v
        out += coeff * v
    return out
