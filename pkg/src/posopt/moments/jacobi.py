"""Three-term recurrence (Jacobi) parameters from Hankel moments."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import linalg

from ..errors import InputError, NumericalError
from .sequence import REAL, MomentSequence

logger = logging.getLogger(__name__)


@dataclass
class JacobiParams:
    """π_{k+1} = (x − α_k) π_k − β_k π_{k−1}, with β_0 = c_0."""

    alphas: List[float] = field(default_factory=list)
    betas: List[float] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.alphas)

    def jacobi_matrix(self) -> np.ndarray:
        n = self.length
        off = np.sqrt(np.maximum(self.betas[1:n], 0.0))
        return np.diag(self.alphas) + np.diag(off, 1) + np.diag(off, -1)

    def to_dict(self) -> Dict[str, Any]:
        return {'alphas': self.alphas, 'betas': self.betas, 'length': self.length}


def _inner(p: np.ndarray, q: np.ndarray, c: np.ndarray) -> Tuple[float, float]:
    """Hankel inner product Σ p_i q_j c_{i+j} and its absolute-value counterpart."""
    idx = np.add.outer(np.arange(p.size), np.arange(q.size))
    terms = np.outer(p, q) * c[idx]
    return float(terms.sum()), float(np.abs(terms).sum())


def jacobi_params(c: MomentSequence, max_k: Optional[int] = None,
                  tol: float = 1e-10) -> JacobiParams:
    """Gram-Schmidt on monomials with the Hankel inner product.

    Stops when moment data runs out, after ``max_k`` steps, or when ⟨π_k, π_k⟩
    is zero within ``tol`` times its cancellation scale (finitely many atoms).
    """
    if c.kind != REAL:
        raise InputError('Jacobi parameters need real-line moments')
    moments = c.values
    if moments.size == 0 or moments[0] <= 0.0:
        raise NumericalError('Jacobi recurrence needs c_0 > 0')
    limit = (moments.size - 2) // 2 + 1 if max_k is None else max_k
    params = JacobiParams()
    prev = np.zeros(1)
    cur = np.ones(1)
    prev_norm = 0.0
    cur_norm = float(moments[0])

    for k in range(limit):
        if 2 * k + 1 >= moments.size:
            break
        x_cur = np.concatenate([[0.0], cur])
        num, _ = _inner(x_cur, cur, moments)
        alpha = num / cur_norm
        beta = cur_norm / prev_norm if k else float(moments[0])
        params.alphas.append(alpha)
        params.betas.append(beta)
        if 2 * k + 2 >= moments.size:
            break
        nxt = x_cur.copy()
        nxt[:cur.size] -= alpha * cur
        if k:
            nxt[:prev.size] -= (cur_norm / prev_norm) * prev
        norm, scale = _inner(nxt, nxt, moments)
        if norm <= tol * scale:
            if norm < -tol * scale:
                logger.warning(f'Negative recurrence norm at step {k + 1}: moments not positive')
            break
        prev, cur = cur, nxt
        prev_norm, cur_norm = cur_norm, norm

    logger.debug(f'Jacobi recurrence produced {params.length} steps')
    return params


def gauss_quadrature(params: JacobiParams,
                     c0: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes (Jacobi eigenvalues) and weights c0·(first eigenvector component)²."""
    n = params.length
    if n == 0:
        return np.zeros(0), np.zeros(0)
    total = params.betas[0] if c0 is None else c0
    off = np.sqrt(np.maximum(np.asarray(params.betas[1:n]), 0.0))
    nodes, vectors = linalg.eigh_tridiagonal(np.asarray(params.alphas), off)
    return nodes, total * vectors[0] ** 2
