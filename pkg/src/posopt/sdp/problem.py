"""Standard-form SDP data and solution records.

Primal (minimization form)::

    min  Σ_b ⟨C_b, X_b⟩ + c_freeᵀ u
    s.t. Σ_b ⟨A_ib, X_b⟩ + (F u)_i = b_i,   X_b ⪰ 0,  u free

Dual::

    max  bᵀ y
    s.t. S_b = C_b − Σ_i y_i A_ib ⪰ 0,   Fᵀ y = c_free
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionError, InputError

# Solution statuses
OPTIMAL = 'optimal'
PRIMAL_INFEASIBLE = 'primal_infeasible'
DUAL_INFEASIBLE = 'dual_infeasible'
SLOW_PROGRESS = 'slow_progress'

STATUSES = (OPTIMAL, PRIMAL_INFEASIBLE, DUAL_INFEASIBLE, SLOW_PROGRESS)


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


@dataclass
class SdpProblem:
    """Dense block SDP in standard form with optional free scalar variables."""

    block_sizes: Tuple[int, ...]
    c_blocks: List[np.ndarray]
    a_blocks: List[np.ndarray]
    b: np.ndarray
    free_c: np.ndarray = field(default_factory=lambda: np.zeros(0))
    free_a: Optional[np.ndarray] = None

    def __post_init__(self):
        self.block_sizes = tuple(int(n) for n in self.block_sizes)
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        m = self.b.shape[0]
        self.free_c = np.asarray(self.free_c, dtype=float).reshape(-1)
        if self.free_a is None:
            self.free_a = np.zeros((m, self.free_c.shape[0]))
        self.free_a = np.asarray(self.free_a, dtype=float).reshape(m, self.free_c.shape[0])
        self.c_blocks = [np.asarray(c, dtype=float) for c in self.c_blocks]
        self.a_blocks = [np.asarray(a, dtype=float).reshape(m, n, n)
                         for a, n in zip(self.a_blocks, self.block_sizes)]
        self.validate()

    def validate(self) -> None:
        """Check dimensions, symmetry and finiteness."""
        if any(n < 1 for n in self.block_sizes):
            raise DimensionError(f'Block sizes must be positive: {self.block_sizes}')
        count = len(self.block_sizes)
        if len(self.c_blocks) != count or len(self.a_blocks) != count:
            raise DimensionError('Number of C/A blocks does not match the block structure')
        for n, c, a in zip(self.block_sizes, self.c_blocks, self.a_blocks):
            if c.shape != (n, n):
                raise DimensionError(f'Objective block has shape {c.shape}, expected {(n, n)}')
            scale = 1.0 + np.abs(c).max(initial=0.0)
            if np.abs(c - c.T).max(initial=0.0) > 1e-12 * scale:
                raise InputError('Objective block is not symmetric')
            if a.size and np.abs(a - a.transpose(0, 2, 1)).max() > 1e-12 * (1.0 + np.abs(a).max()):
                raise InputError('Constraint matrix is not symmetric')
        arrays = [self.b, self.free_c, self.free_a] + self.c_blocks + self.a_blocks
        if not all(np.all(np.isfinite(arr)) for arr in arrays):
            raise InputError('SDP data contains NaN or infinite entries')

    @property
    def num_constraints(self) -> int:
        return int(self.b.shape[0])

    @property
    def num_free(self) -> int:
        return int(self.free_c.shape[0])

    @property
    def total_dimension(self) -> int:
        return int(sum(self.block_sizes))

    def apply(self, x_blocks: Sequence[np.ndarray]) -> np.ndarray:
        """A(X): vector of Σ_b ⟨A_ib, X_b⟩."""
        out = np.zeros(self.num_constraints)
        for a, x in zip(self.a_blocks, x_blocks):
            out += np.einsum('kij,ij->k', a, x)
        return out

    def adjoint(self, y: np.ndarray) -> List[np.ndarray]:
        """Aᵀ(y): per-block Σ_i y_i A_ib."""
        return [np.einsum('k,kij->ij', y, a) for a in self.a_blocks]

    def primal_objective(self, x_blocks: Sequence[np.ndarray],
                         free: Optional[np.ndarray] = None) -> float:
        value = sum(float(np.sum(c * x)) for c, x in zip(self.c_blocks, x_blocks))
        if free is not None and self.num_free:
            value += float(self.free_c @ free)
        return value

    def dual_objective(self, y: np.ndarray) -> float:
        return float(self.b @ y)

    def data_norm(self) -> float:
        norms = [np.linalg.norm(c) for c in self.c_blocks]
        norms += [np.linalg.norm(a) for a in self.a_blocks]
        norms += [np.linalg.norm(self.b), np.linalg.norm(self.free_c), np.linalg.norm(self.free_a)]
        return float(max(norms, default=0.0))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'block_sizes': list(self.block_sizes),
            'c_blocks': [c.tolist() for c in self.c_blocks],
            'a_blocks': [a.tolist() for a in self.a_blocks],
            'b': self.b.tolist(),
            'free_c': self.free_c.tolist(),
            'free_a': self.free_a.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SdpProblem':
        return cls(
            block_sizes=tuple(data['block_sizes']),
            c_blocks=[np.array(c, dtype=float) for c in data['c_blocks']],
            a_blocks=[np.array(a, dtype=float) for a in data['a_blocks']],
            b=np.array(data['b'], dtype=float),
            free_c=np.array(data.get('free_c', []), dtype=float),
            free_a=(np.array(data['free_a'], dtype=float)
                    if data.get('free_a') is not None else None),
        )


@dataclass
class SdpSolution:
    """Result of ``solve_sdp``.

    For infeasible statuses ``certificate`` holds the improving ray:
    ``{'kind': 'primal_infeasible', 'y': ..., 'violation': ...}`` with
    −Σ y_i A_i ⪰ 0, Fᵀy = 0, bᵀy = 1; or
    ``{'kind': 'dual_infeasible', 'x_blocks': ..., 'free': ..., 'violation': ...}``
    with A(X) + F u = 0, X ⪰ 0, ⟨C, X⟩ + cᵀu = −1.
    """

    status: str
    x_blocks: List[np.ndarray]
    y: np.ndarray
    s_blocks: List[np.ndarray]
    free: np.ndarray
    primal_objective: float
    dual_objective: float
    iterations: int
    primal_residual: float = 0.0
    dual_residual: float = 0.0
    gap: float = 0.0
    certificate: Optional[Dict[str, Any]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            'status': self.status,
            'primal_objective': self.primal_objective,
            'dual_objective': self.dual_objective,
            'iterations': self.iterations,
            'primal_residual': self.primal_residual,
            'dual_residual': self.dual_residual,
            'gap': self.gap,
            'x_blocks': [x.tolist() for x in self.x_blocks],
            'y': self.y.tolist(),
            'free': self.free.tolist(),
        }
        if self.certificate is not None:
            cert = {}
            for key, value in self.certificate.items():
                if isinstance(value, np.ndarray):
                    cert[key] = value.tolist()
                elif isinstance(value, list):
                    cert[key] = [v.tolist() if isinstance(v, np.ndarray) else v for v in value]
                else:
                    cert[key] = value
            result['certificate'] = cert
        return result


def lmi_problem(blocks: Sequence[Tuple[np.ndarray, Sequence[np.ndarray]]],
                objective: Optional[Sequence[float]] = None) -> SdpProblem:
    """Dual-form SDP for the LMI system F_b0 + Σ_k y_k F_bk ⪰ 0 (all b).

    The solver maximizes ``objectiveᵀ y`` (zero objective means pure feasibility);
    ``solution.y`` holds the LMI variables and ``solution.s_blocks`` the values
    of the affine matrix functions.
    """
    if not blocks:
        raise InputError('LMI system has no blocks')
    num_vars = len(blocks[0][1])
    c_blocks, a_blocks, sizes = [], [], []
    for f0, fk in blocks:
        f0 = symmetrize(np.atleast_2d(np.asarray(f0, dtype=float)))
        if len(fk) != num_vars:
            raise DimensionError('Every LMI block needs one coefficient matrix per variable')
        n = f0.shape[0]
        sizes.append(n)
        c_blocks.append(f0)
        if num_vars:
            stacked = np.stack([symmetrize(np.atleast_2d(np.asarray(f, dtype=float))) for f in fk])
        else:
            stacked = np.zeros((0, n, n))
        a_blocks.append(-stacked)
    b = np.zeros(num_vars) if objective is None else np.asarray(objective, dtype=float)
    return SdpProblem(tuple(sizes), c_blocks, a_blocks, b)
