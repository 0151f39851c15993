"""Counting roots inside the unit disk with the reflected-polynomial kernel."""

from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from ..errors import InputError


@dataclass
class DiskCount:
    inside: int
    boundary: int
    negative: int
    eigenvalues: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        return {
            'inside': self.inside,
            'boundary': self.boundary,
            'negative': self.negative,
            'eigenvalues': self.eigenvalues.tolist(),
        }


def reflected(coeffs: Sequence[complex]) -> np.ndarray:
    """p♭(z) = z^d conj(p(1/z̄)): ascending coefficients reversed and conjugated."""
    return np.conj(np.asarray(coeffs, dtype=complex)[::-1])


def disk_form(coeffs: Sequence[complex]) -> np.ndarray:
    """Hermitian d×d matrix H of (p♭(z)p♭(w)* − p(z)p(w)*)/(1 − z w̄) on 1..z^{d−1}."""
    a = np.asarray(coeffs, dtype=complex)
    b = reflected(a)
    d = a.size - 1
    numerator = np.outer(b, np.conj(b)) - np.outer(a, np.conj(a))
    form = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            for k in range(min(i, j) + 1):
                form[i, j] += numerator[i - k, j - k]
    return 0.5 * (form + form.conj().T)


def disk_root_count(coeffs: Sequence[complex], rank_tol: float = 1e-7) -> DiskCount:
    """Signature of the disk form of p (ascending complex coefficients).

    Positive eigenvalues count roots inside the open disk; zero eigenvalues
    (|λ| ≤ rank_tol·scale) count roots on the circle, multiplicities collapsed.
    """
    a = np.asarray(coeffs, dtype=complex).reshape(-1)
    nonzero = np.nonzero(np.abs(a) > 0.0)[0]
    if nonzero.size == 0:
        raise InputError('Disk root count of the zero polynomial')
    a = a[:nonzero[-1] + 1]
    if a.size < 2:
        raise InputError('Disk root count needs a polynomial of degree at least 1')
    form = disk_form(a)
    eigenvalues = np.linalg.eigvalsh(form)
    scale = max(float(np.abs(eigenvalues).max(initial=0.0)), float(np.sum(np.abs(a) ** 2)))
    cutoff = rank_tol * scale
    inside = int(np.sum(eigenvalues > cutoff))
    negative = int(np.sum(eigenvalues < -cutoff))
    boundary = eigenvalues.size - inside - negative
    return DiskCount(inside, boundary, negative, eigenvalues)
