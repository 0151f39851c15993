"""State-space data: plain systems and H∞ (DGKF) plants."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ..errors import DimensionError, InputError


def as_matrix(value: Any, name: str) -> np.ndarray:
    try:
        m = np.atleast_2d(np.asarray(value, dtype=float))
    except (TypeError, ValueError) as exc:
        raise InputError(f'{name} is not a numeric matrix: {exc}') from exc
    if m.ndim != 2:
        raise DimensionError(f'{name} must be two-dimensional')
    if not np.all(np.isfinite(m)):
        raise InputError(f'{name} has non-finite entries')
    return m


@dataclass
class StateSpaceSystem:
    """dx/dt = Ax + Bu, y = Cx + Du."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: Optional[np.ndarray] = None

    def __post_init__(self):
        self.A = as_matrix(self.A, 'A')
        self.B = as_matrix(self.B, 'B')
        self.C = as_matrix(self.C, 'C')
        n = self.A.shape[0]
        if self.A.shape != (n, n):
            raise DimensionError(f'A must be square, got {self.A.shape}')
        if self.B.shape[0] != n:
            raise DimensionError(f'B needs {n} rows, got {self.B.shape[0]}')
        if self.C.shape[1] != n:
            raise DimensionError(f'C needs {n} columns, got {self.C.shape[1]}')
        if self.D is None:
            self.D = np.zeros((self.C.shape[0], self.B.shape[1]))
        self.D = as_matrix(self.D, 'D')
        if self.D.shape != (self.C.shape[0], self.B.shape[1]):
            raise DimensionError(
                f'D must be {self.C.shape[0]}×{self.B.shape[1]}, got {self.D.shape}')

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def p(self) -> int:
        return self.C.shape[0]

    def has_feedthrough(self) -> bool:
        return bool(np.any(self.D != 0.0))

    def scale(self) -> float:
        mats = (self.A, self.B, self.C, self.D)
        return 1.0 + max(float(np.abs(M).max(initial=0.0)) for M in mats)

    @classmethod
    def zero(cls, n: int, m: int, p: int) -> 'StateSpaceSystem':
        return cls(np.zeros((n, n)), np.zeros((n, m)), np.zeros((p, n)))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'StateSpaceSystem':
        try:
            return cls(data['A'], data['B'], data['C'], data.get('D'))
        except KeyError as exc:
            raise InputError(f'System is missing matrix {exc}') from exc

    def to_dict(self) -> Dict[str, Any]:
        return {'A': self.A.tolist(), 'B': self.B.tolist(), 'C': self.C.tolist(),
                'D': self.D.tolist()}


@dataclass
class DgkfPlant:
    """H∞ plant (A, B1, B2, C1, C2) at level γ under the standard normalization."""

    A: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    C1: np.ndarray
    C2: np.ndarray
    gamma: float
    flags: Dict[str, bool] = field(default_factory=lambda: {
        'd21_identity': True,
        'd12_orthonormal': True,
        'd11_zero': True,
    })

    def __post_init__(self):
        for name in ('A', 'B1', 'B2', 'C1', 'C2'):
            setattr(self, name, as_matrix(getattr(self, name), name))
        n = self.A.shape[0]
        if self.A.shape != (n, n):
            raise DimensionError(f'A must be square, got {self.A.shape}')
        for name in ('B1', 'B2'):
            if getattr(self, name).shape[0] != n:
                raise DimensionError(f'{name} needs {n} rows')
        for name in ('C1', 'C2'):
            if getattr(self, name).shape[1] != n:
                raise DimensionError(f'{name} needs {n} columns')
        if self.B2.shape[1] != self.C1.shape[0]:
            raise DimensionError('B2 columns must match C1 rows (D12 = I)')
        if self.B1.shape[1] != self.C2.shape[0]:
            raise DimensionError('B1 columns must match C2 rows (D21 = I)')
        self.gamma = float(self.gamma)
        if not self.gamma > 0.0:
            raise InputError(f'gamma must be positive, got {self.gamma}')

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def a_cross(self) -> np.ndarray:
        """A^× = A − B1 C2."""
        return self.A - self.B1 @ self.C2

    def with_gamma(self, gamma: float) -> 'DgkfPlant':
        return DgkfPlant(self.A, self.B1, self.B2, self.C1, self.C2, gamma, dict(self.flags))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DgkfPlant':
        try:
            return cls(data['A'], data['B1'], data['B2'], data['C1'], data['C2'], data['gamma'])
        except KeyError as exc:
            raise InputError(f'Plant is missing field {exc}') from exc

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {name: getattr(self, name).tolist()
                               for name in ('A', 'B1', 'B2', 'C1', 'C2')}
        out['gamma'] = self.gamma
        out['flags'] = dict(self.flags)
        return out


def _load_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise InputError(f'{path}: invalid JSON ({exc})') from exc


def load_system(path: Union[str, Path]) -> StateSpaceSystem:
    return StateSpaceSystem.from_dict(_load_json(path))


def load_plant(path: Union[str, Path]) -> DgkfPlant:
    return DgkfPlant.from_dict(_load_json(path))


def controllability_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    blocks = [B]
    for _ in range(A.shape[0] - 1):
        blocks.append(A @ blocks[-1])
    return np.hstack(blocks)


def is_reachable(system: StateSpaceSystem, tol: float = 1e-9) -> bool:
    ctrb = controllability_matrix(system.A, system.B)
    return int(np.linalg.matrix_rank(ctrb, tol=tol * system.scale())) == system.n
