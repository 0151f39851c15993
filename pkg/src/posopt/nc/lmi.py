"""LMI representation of NC matrix inequalities that are quadratic in the unknowns.

Letters split into known a-letters (variables ``0..num_a-1``, evaluated at a
fixed tuple A) and unknown x-letters. For P(a, x) of x-degree ≤ 2 with
P₂ = V(a)[x]ᵀ M(a) V(a)[x] and M(A) = F Fᵀ,

    ℒ(A)[X] = [[P₀ + P₁,   (FᵀV)ᵀ],
               [FᵀV,        −I   ]]

is affine in X and its Schur complement is P(A, X).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import DimensionError, InputError, NumericalError
from ..sdp import SdpProblem, Tolerances, lmi_problem, psd_factor
from .evaluate import MatrixTuple, nc_eval
from .middle import middle_from_quadratic
from .ncpoly import NcPoly
from .words import SYMMETRIC, Word, letter_star, letter_var

logger = logging.getLogger(__name__)

VERIFY_SAMPLES = 20


def _x_degree(word: Word, num_a: int) -> int:
    return sum(1 for c in word if letter_var(c) >= num_a)


def split_by_x_degree(P: NcPoly, num_a: int) -> Tuple[NcPoly, NcPoly, NcPoly]:
    parts: List[Dict[Word, float]] = [{}, {}, {}]
    for word, coeff in P.items():
        deg = _x_degree(word, num_a)
        if deg > 2:
            raise InputError(f'x-degree {deg} exceeds 2; '
                             'only quadratic inequalities convert to LMIs')
        parts[deg][word] = coeff
    polys = tuple(NcPoly(P.num_vars, t, P.mode, P.labels) for t in parts)
    return polys  # type: ignore[return-value]


def _eval_known(p: NcPoly, A: MatrixTuple, n: int) -> np.ndarray:
    if p.num_vars == 0 or len(A) == 0:
        return p.coefficient(()) * np.eye(n)
    return nc_eval(p, A)


@dataclass
class LmiRep:
    """Affine pencil ℒ(X) = L0 + Σ_k x_k L_k over the scalar unknowns of X."""

    polynomial: NcPoly
    known: MatrixTuple
    num_a: int
    size: int
    symmetric_unknowns: bool
    border: List[Word]
    factor: Optional[np.ndarray]
    parts: Tuple[NcPoly, NcPoly, NcPoly]
    L0: np.ndarray
    coefficients: List[np.ndarray]
    unknowns: List[Tuple[int, int, int]]

    @property
    def num_unknowns(self) -> int:
        return self.polynomial.num_vars - self.num_a

    @property
    def dimension(self) -> int:
        return self.L0.shape[0]

    def _full_tuple(self, X: MatrixTuple) -> MatrixTuple:
        if len(X) != self.num_unknowns:
            raise DimensionError(f'Expected {self.num_unknowns} unknown matrices, got {len(X)}')
        mode = self.polynomial.mode
        return MatrixTuple(tuple(self.known.matrices) + tuple(X.matrices), mode)

    def _border_vector(self, X: MatrixTuple) -> np.ndarray:
        n = self.size
        blocks = []
        for word in self.border:
            lead = word[0]
            x = X[letter_var(lead) - self.num_a]
            x = x.T if letter_star(lead) else x
            tail = NcPoly.word(self.num_a, word[1:], 1.0, self.polynomial.mode)
            blocks.append(x @ _eval_known(tail, self.known, n))
        return np.vstack(blocks)

    def _top_left(self, X: MatrixTuple) -> np.ndarray:
        P0, P1, _ = self.parts
        full = self._full_tuple(X)
        return nc_eval(P0, full) + nc_eval(P1, full)

    def evaluate(self, X: MatrixTuple) -> np.ndarray:
        top = self._top_left(X)
        if self.factor is None:
            return top
        off = self.factor.T @ self._border_vector(X)
        r = off.shape[0]
        return np.block([[top, off.T], [off, -np.eye(r)]])

    def schur_complement(self, X: MatrixTuple) -> np.ndarray:
        top = self._top_left(X)
        if self.factor is None:
            return top
        off = self.factor.T @ self._border_vector(X)
        return top + off.T @ off

    def target(self, X: MatrixTuple) -> np.ndarray:
        return nc_eval(self.polynomial, self._full_tuple(X))

    def unknowns_to_tuple(self, values: np.ndarray) -> MatrixTuple:
        n = self.size
        mats = [np.zeros((n, n)) for _ in range(self.num_unknowns)]
        for value, (u, r, c) in zip(values, self.unknowns):
            mats[u][r, c] = value
            if self.symmetric_unknowns:
                mats[u][c, r] = value
        mode = SYMMETRIC if self.symmetric_unknowns else self.polynomial.mode
        return MatrixTuple(tuple(mats), mode)

    def to_sdp(self, objective: Optional[np.ndarray] = None) -> SdpProblem:
        """{X : ℒ(X) ⪯ 0} as −L0 − Σ x_k L_k ⪰ 0 in dual form."""
        return lmi_problem([(-self.L0, [-L for L in self.coefficients])], objective)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dimension': self.dimension,
            'num_unknowns': len(self.unknowns),
            'border': len(self.border),
            'factor_rank': 0 if self.factor is None else int(self.factor.shape[1]),
            'L0': self.L0.tolist(),
            'coefficients': [L.tolist() for L in self.coefficients],
        }


def _unknown_basis(num_unknowns: int, n: int, symmetric: bool) -> List[Tuple[int, int, int]]:
    out = []
    for u in range(num_unknowns):
        for r in range(n):
            for c in range(r if symmetric else 0, n):
                out.append((u, r, c))
    return out


def build_lmi(P: NcPoly, A: MatrixTuple, check: Optional[NcPoly] = None, size: int = 1,
              symmetric_unknowns: Optional[bool] = None,
              tol: Optional[Tolerances] = None) -> LmiRep:
    """Convert P(A, X) ⪯ 0 into an LMI in X.

    Args:
        P: symmetric NcPoly; its first ``len(A)`` variables are the known letters.
        A: known matrices (may be empty, then ``size`` fixes the dimension).
        check: optional independent expression for P(A, X), compared on samples.
        symmetric_unknowns: parametrize X_u as symmetric (default: in symmetric mode).

    Raises:
        InputError: x-degree above 2, non-symmetric P, or M(A) not PSD.
        NumericalError: the Schur identity fails on the verification samples.
    """
    tol = tol or Tolerances()
    num_a = len(A)
    if P.num_vars <= num_a:
        raise DimensionError('P has no unknown letters beyond the known tuple')
    if not P.is_symmetric():
        raise InputError('build_lmi requires a symmetric polynomial')
    n = A.size if num_a else size
    symmetric_unknowns = bool(symmetric_unknowns) or P.mode == SYMMETRIC
    parts = split_by_x_degree(P, num_a)

    border: List[Word] = []
    factor = None
    if not parts[2].is_zero():
        border, middle = middle_from_quadratic(parts[2], num_a, P.mode)
        k = len(border)
        block = np.zeros((k * n, k * n))
        for i in range(k):
            for j in range(k):
                if not middle[i][j].is_zero():
                    block[i * n:(i + 1) * n, j * n:(j + 1) * n] = _eval_known(middle[i][j], A, n)
        block = (block + block.T) / 2.0
        decomposition = psd_factor(block, tol.factor_tol)
        if not decomposition.is_psd:
            eig = float(np.linalg.eigvalsh(block)[0])
            raise InputError('Middle matrix M(A) is not positive semidefinite '
                             f'(eigenvalue {eig:.3e})')
        factor = decomposition.square_root()

    unknowns = _unknown_basis(P.num_vars - num_a, n, symmetric_unknowns)
    rep = LmiRep(P, A, num_a, n, symmetric_unknowns, border, factor, parts,
                 np.zeros((1, 1)), [], unknowns)
    zero = rep.unknowns_to_tuple(np.zeros(len(unknowns)))
    rep.L0 = rep.evaluate(zero)
    for k in range(len(unknowns)):
        e = np.zeros(len(unknowns))
        e[k] = 1.0
        rep.coefficients.append(rep.evaluate(rep.unknowns_to_tuple(e)) - rep.L0)

    rng = np.random.default_rng(tol.seed)
    for _ in range(VERIFY_SAMPLES):
        X = rep.unknowns_to_tuple(rng.standard_normal(len(unknowns)))
        schur = rep.schur_complement(X)
        expected = rep.target(X)
        scale = 1.0 + float(np.abs(expected).max())
        if np.abs(schur - expected).max() > 1e-8 * scale:
            raise NumericalError('Schur complement of the LMI does not reproduce P(A, X)')
        if check is not None:
            other = nc_eval(check, rep._full_tuple(X))
            if np.abs(schur - other).max() > 1e-8 * scale:
                raise NumericalError('Check polynomial disagrees with P(A, X)')
    logger.info(f'build_lmi: pencil of size {rep.dimension} in {len(unknowns)} unknowns')
    return rep
