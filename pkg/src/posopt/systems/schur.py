"""Schur complements of symmetric 2×2 block matrices."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..errors import InputError

logger = logging.getLogger(__name__)


@dataclass
class SchurResult:
    complement: np.ndarray
    matrix_psd: bool
    gamma_pd: bool
    complement_psd: bool
    pseudo_inverse: bool

    @property
    def equivalence_holds(self) -> bool:
        """(M ⪰ 0) ⇔ (γ ≻ 0 and complement ⪰ 0)."""
        return self.matrix_psd == (self.gamma_pd and self.complement_psd)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'complement': self.complement.tolist(),
            'matrix_psd': self.matrix_psd,
            'gamma_pd': self.gamma_pd,
            'complement_psd': self.complement_psd,
            'equivalence_holds': self.equivalence_holds,
            'pseudo_inverse': self.pseudo_inverse,
        }


def schur_complement(M: np.ndarray, split: Optional[int] = None, allow_pinv: bool = False,
                     tol: float = 1e-10) -> SchurResult:
    """α − β γ⁻¹ βᵀ for M = [[α, β], [βᵀ, γ]] with α of size ``split``.

    Raises:
        InputError: M is not square/symmetric, or γ is singular and ``allow_pinv`` is off.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n = M.shape[0]
    if M.shape != (n, n) or n < 2:
        raise InputError(f'Expected a square block matrix of size ≥ 2, got {M.shape}')
    scale = max(1.0, float(np.abs(M).max()))
    if np.abs(M - M.T).max() > 1e-12 * scale:
        raise InputError('Block matrix is not symmetric')
    k = n // 2 if split is None else split
    if not 1 <= k < n:
        raise InputError(f'Split {k} must lie in 1..{n - 1}')
    alpha, beta, gamma = M[:k, :k], M[:k, k:], M[k:, k:]

    gamma_eigs = np.linalg.eigvalsh(gamma)
    singular = float(np.min(np.abs(gamma_eigs))) <= tol * scale
    if singular and not allow_pinv:
        raise InputError('Lower-right block is singular; pass allow_pinv to use a pseudo-inverse')
    if singular:
        logger.warning('schur_complement: singular lower-right block, using the pseudo-inverse')
        inverse = np.linalg.pinv(gamma)
    else:
        inverse = np.linalg.inv(gamma)
    complement = alpha - beta @ inverse @ beta.T
    complement = (complement + complement.T) / 2.0

    slack = tol * scale
    return SchurResult(
        complement=complement,
        matrix_psd=bool(np.linalg.eigvalsh(M)[0] >= -slack),
        gamma_pd=bool(gamma_eigs[0] > slack),
        complement_psd=bool(np.linalg.eigvalsh(complement)[0] >= -slack),
        pseudo_inverse=singular,
    )
