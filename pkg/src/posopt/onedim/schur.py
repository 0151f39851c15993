"""Schur parameters of truncated Taylor data and Carathéodory-Fejér feasibility."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy import linalg

from ..errors import InputError

logger = logging.getLogger(__name__)


@dataclass
class SchurSequence:
    params: List[complex] = field(default_factory=list)
    terminated: bool = False
    feasible: bool = True
    contraction_norm: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': [[p.real, p.imag] for p in self.params],
            'terminated': self.terminated,
            'feasible': self.feasible,
            'contraction_norm': self.contraction_norm,
        }


def _series_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """First len(num) coefficients of num/den as power series (den[0] != 0)."""
    out = np.zeros(num.size, dtype=complex)
    for k in range(num.size):
        acc = num[k]
        for i in range(1, min(k, den.size - 1) + 1):
            acc -= den[i] * out[k - i]
        out[k] = acc / den[0]
    return out


def toeplitz_contraction_norm(taylor: Sequence[complex]) -> float:
    """Operator norm of the lower-triangular Toeplitz matrix of c_0..c_m."""
    c = np.asarray(taylor, dtype=complex)
    first_row = np.zeros(c.size, dtype=complex)
    first_row[0] = c[0]
    return float(np.linalg.norm(linalg.toeplitz(c, first_row), 2))


def schur_parameters(taylor: Sequence[complex], tol: float = 1e-9) -> SchurSequence:
    """Run the Schur recursion f ↦ (f − s)/(z(1 − s̄f)) on c_0..c_m.

    The sequence terminates at |s_j| = 1; the data is then feasible only if
    the remaining coefficients vanish. Any |s_j| > 1 + tol is infeasible.
    """
    f = np.asarray(taylor, dtype=complex).reshape(-1)
    if f.size == 0:
        raise InputError('Schur recursion needs at least one Taylor coefficient')
    result = SchurSequence(contraction_norm=toeplitz_contraction_norm(f))
    scale = 1.0 + float(np.abs(f).max())

    while f.size:
        s = complex(f[0])
        result.params.append(s)
        modulus = abs(s)
        if modulus > 1.0 + tol:
            result.feasible = False
            break
        if abs(modulus - 1.0) <= tol:
            result.terminated = True
            rest = f[1:]
            result.feasible = bool(rest.size == 0 or np.abs(rest).max() <= tol * scale)
            if not result.feasible:
                logger.info('Schur parameter of modulus one with nonzero remainder')
            break
        numerator = f[1:]
        denominator = -np.conj(s) * f
        denominator[0] += 1.0
        f = _series_divide(numerator, denominator)

    logger.debug(f'Schur parameters: {len(result.params)} computed, feasible={result.feasible}')
    return result
