"""Truncated moment-problem feasibility tests."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..errors import InputError
from ..sdp import Tolerances, numerical_rank
from .sequence import CIRCLE, REAL, MomentSequence, moment_matrix, shifted_hankel

logger = logging.getLogger(__name__)

# PSD criteria: λ_min ≥ −tol·‖H‖ on the raw matrix, or the same test after diagonal scaling
NORM = 'norm'
SCALED = 'scaled'
CRITERIA = (NORM, SCALED)


@dataclass
class MomentCheck:
    """Feasibility through ``order``: a necessary condition for the full problem."""

    feasible: bool
    min_eig: float
    order: int
    shifted_min_eig: Optional[float] = None
    criterion: str = NORM

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'feasible': self.feasible, 'min_eig': self.min_eig,
                               'order': self.order, 'criterion': self.criterion}
        if self.shifted_min_eig is not None:
            out['shifted_min_eig'] = self.shifted_min_eig
        return out


def _psd_by_norm(matrix: np.ndarray, tol: float) -> bool:
    eig = np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))
    return bool(eig[0] >= -tol * float(np.abs(eig).max(initial=0.0)))


def _psd_after_scaling(matrix: np.ndarray, tol: float) -> bool:
    """PSD test on D^{-1/2} M D^{-1/2}, robust to moments spanning many magnitudes."""
    diag = np.real(np.diag(matrix))
    top = float(np.abs(diag).max(initial=0.0))
    if top == 0.0:
        return bool(np.abs(matrix).max(initial=0.0) == 0.0)
    if np.any(diag < -tol * top):
        return False
    d = np.sqrt(np.maximum(diag, tol * top))
    scaled = matrix / np.outer(d, d)
    scaled = 0.5 * (scaled + scaled.conj().T)
    eig = np.linalg.eigvalsh(scaled)
    return bool(eig[0] >= -tol * max(1.0, float(np.abs(eig).max())))


def _min_eig(matrix: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))[0])


def _psd(matrix: np.ndarray, tol: float, criterion: str) -> bool:
    if criterion == NORM:
        return _psd_by_norm(matrix, tol)
    if criterion == SCALED:
        return _psd_after_scaling(matrix, tol)
    raise InputError(f'Unknown PSD criterion {criterion!r}; expected one of {CRITERIA}')


def hamburger_check(c: MomentSequence, order: Optional[int] = None, stieltjes: bool = False,
                    tol: Optional[Tolerances] = None, criterion: str = NORM) -> MomentCheck:
    """Hankel (c_{k+l}) PSD; with ``stieltjes`` also the shifted Hankel (c_{k+l+1}).

    ``criterion`` NORM accepts λ_min(H) ≥ −psd_tol·‖H‖. SCALED runs that test on
    D^{-1/2} H D^{-1/2}, D = diag(H), for data spanning many magnitudes.
    """
    tol = tol or Tolerances()
    if c.kind != REAL:
        raise InputError('Hamburger/Stieltjes checks need real-line moments')
    order = c.max_order if order is None else order
    hankel = moment_matrix(c, order).matrix
    feasible = _psd(hankel, tol.psd_tol, criterion)
    result = MomentCheck(feasible, _min_eig(hankel), order, criterion=criterion)
    if stieltjes:
        shifted = shifted_hankel(c, order).matrix
        result.shifted_min_eig = _min_eig(shifted)
        result.feasible = feasible and _psd(shifted, tol.psd_tol, criterion)
    logger.debug(f'Moment check order {order}: feasible={result.feasible}')
    return result


def trig_moment_check(c: MomentSequence, order: Optional[int] = None,
                      tol: Optional[Tolerances] = None, criterion: str = NORM) -> MomentCheck:
    """Toeplitz (c_{n−m}) PSD under the same criteria as :func:`hamburger_check`."""
    tol = tol or Tolerances()
    if c.kind != CIRCLE:
        raise InputError('Trigonometric moment checks need circle moments')
    order = c.max_order if order is None else order
    toeplitz = moment_matrix(c, order).matrix
    return MomentCheck(_psd(toeplitz, tol.psd_tol, criterion), _min_eig(toeplitz), order,
                       criterion=criterion)


def hankel_rank(c: MomentSequence, order: Optional[int] = None, tol: float = 1e-8) -> int:
    order = c.max_order if order is None else order
    return numerical_rank(moment_matrix(c, order).matrix, tol)
