"""Nevanlinna-Pick interpolation on the disk and its half-plane variant."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..errors import InputError

logger = logging.getLogger(__name__)

BOUNDARY_SAMPLES = 720
SAMPLE_RADIUS = 0.99


def _pairs(matrix: np.ndarray):
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.atleast_2d(matrix)]


@dataclass
class PickData:
    nodes: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=complex).reshape(-1)
        self.targets = np.asarray(self.targets, dtype=complex).reshape(-1)
        if self.nodes.size == 0 or self.nodes.size != self.targets.size:
            raise InputError('Pick data needs equally many nodes and targets')
        if np.any(np.abs(self.nodes) >= 1.0):
            raise InputError('Pick nodes must lie in the open unit disk')
        diffs = np.abs(np.subtract.outer(self.nodes, self.nodes))
        np.fill_diagonal(diffs, np.inf)
        if np.any(diffs <= 1e-14):
            raise InputError('Pick nodes must be pairwise distinct')


@dataclass
class Realization:
    """Contractive colligation T = [[A, B], [C, D]] with g(z) = A + zB(I − zD)⁻¹C."""

    A: complex
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    @property
    def block(self) -> np.ndarray:
        top = np.concatenate([[self.A], self.B])
        bottom = np.hstack([self.C.reshape(-1, 1), self.D])
        return np.vstack([top, bottom])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.block, 2))

    def __call__(self, z: complex) -> complex:
        r = self.D.shape[0]
        if r == 0:
            return complex(self.A)
        resolvent = np.linalg.solve(np.eye(r) - z * self.D, self.C)
        return complex(self.A + z * (self.B @ resolvent))

    def sup_on_circle(self, radius: float = SAMPLE_RADIUS,
                      samples: int = BOUNDARY_SAMPLES) -> float:
        theta = 2.0 * np.pi * np.arange(samples) / samples
        return max(abs(self(radius * np.exp(1j * t))) for t in theta)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'A': [self.A.real, self.A.imag],
            'B': _pairs(self.B),
            'C': _pairs(self.C.reshape(1, -1)),
            'D': _pairs(self.D),
        }


@dataclass
class PickResult:
    feasible: bool
    pick_matrix: np.ndarray
    min_eig: float
    realization: Optional[Realization] = None
    interpolation_error: Optional[float] = None
    sup_norm: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'feasible': self.feasible,
            'min_eig': self.min_eig,
            'pick_matrix': _pairs(self.pick_matrix),
        }
        if self.realization is not None:
            out['realization'] = self.realization.to_dict()
            out['interpolation_error'] = self.interpolation_error
            out['sup_norm'] = self.sup_norm
        return out


def pick_matrix(nodes: Sequence[complex], targets: Sequence[complex]) -> np.ndarray:
    """(1 − d_i d̄_j)/(1 − a_i ā_j)."""
    a = np.asarray(nodes, dtype=complex)
    d = np.asarray(targets, dtype=complex)
    return (1.0 - np.outer(d, np.conj(d))) / (1.0 - np.outer(a, np.conj(a)))


def _realize(data: PickData, matrix: np.ndarray, tol: float) -> Realization:
    eigenvalues, vectors = np.linalg.eigh(matrix)
    keep = eigenvalues > tol * max(1.0, float(np.abs(eigenvalues).max()))
    h = vectors[:, keep] * np.sqrt(eigenvalues[keep])
    # columns u_i = (1, a_i h(i)), v_i = (d_i, h(i)) share one Gram matrix
    u = np.vstack([np.ones(data.nodes.size), (data.nodes[:, None] * h).T])
    v = np.vstack([data.targets, h.T])
    if not np.all(keep):
        logger.debug(f'Pick matrix rank {int(keep.sum())} of {keep.size}, using pseudo-inverse')
    t = v @ np.linalg.pinv(u)
    return Realization(complex(t[0, 0]), t[0, 1:], t[1:, 0], t[1:, 1:])


def pick_interpolate(data: PickData, tol: float = 1e-9) -> PickResult:
    """Decide solvability and, when solvable, build the transfer-function interpolant."""
    matrix = pick_matrix(data.nodes, data.targets)
    matrix = 0.5 * (matrix + matrix.conj().T)
    min_eig = float(np.linalg.eigvalsh(matrix)[0])
    feasible = min_eig >= -tol * max(1.0, float(np.linalg.norm(matrix, 2)))
    if not feasible:
        return PickResult(False, matrix, min_eig)
    if np.any(np.abs(data.targets) > 1.0 + tol):
        return PickResult(False, matrix, min_eig)
    realization = _realize(data, matrix, tol)
    error = max(abs(realization(a) - d) for a, d in zip(data.nodes, data.targets))
    sup = realization.sup_on_circle()
    logger.info(f'Pick interpolant built: error {error:.2e}, sup {sup:.6f}')
    return PickResult(True, matrix, min_eig, realization, float(error), float(sup))


@dataclass
class CaratheodoryResult:
    feasible: bool
    kernel: np.ndarray
    min_eig: float
    disk: PickResult

    def value(self, z: complex) -> complex:
        """Interpolant f = (1 + g)/(1 − g) with Re f ≥ 0."""
        if self.disk.realization is None:
            raise InputError('No interpolant for infeasible data')
        g = self.disk.realization(z)
        return (1.0 + g) / (1.0 - g)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'feasible': self.feasible,
            'min_eig': self.min_eig,
            'kernel': _pairs(self.kernel),
            'disk': self.disk.to_dict(),
        }


def caratheodory_pick(nodes: Sequence[complex], values: Sequence[complex],
                      tol: float = 1e-9) -> CaratheodoryResult:
    """Interpolation by functions with nonnegative real part, via d = (c − 1)/(c + 1)."""
    a = np.asarray(nodes, dtype=complex)
    c = np.asarray(values, dtype=complex)
    if np.any(c.real < -tol):
        return CaratheodoryResult(False, np.zeros((c.size, c.size), dtype=complex), -np.inf,
                                  PickResult(False, np.zeros((0, 0)), -np.inf))
    kernel = (np.add.outer(c, np.conj(c))) / (1.0 - np.outer(a, np.conj(a)))
    kernel = 0.5 * (kernel + kernel.conj().T)
    min_eig = float(np.linalg.eigvalsh(kernel)[0])
    disk = pick_interpolate(PickData(a, (c - 1.0) / (c + 1.0)), tol)
    feasible = min_eig >= -tol * max(1.0, float(np.linalg.norm(kernel, 2)))
    return CaratheodoryResult(feasible and disk.feasible, kernel, min_eig, disk)
