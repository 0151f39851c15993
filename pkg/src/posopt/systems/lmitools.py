"""Helpers for small LMI feasibility problems in symmetric matrix unknowns."""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import DimensionError, NumericalError
from ..sdp import Tolerances, is_usable, lmi_problem, solve_sdp

logger = logging.getLogger(__name__)

Block = Tuple[np.ndarray, List[np.ndarray]]


def sym_basis(n: int) -> List[np.ndarray]:
    """E_rc + E_cr (r ≤ c, diagonal once): a basis of n×n symmetric matrices."""
    out = []
    for r in range(n):
        for c in range(r, n):
            e = np.zeros((n, n))
            e[r, c] = 1.0
            e[c, r] = 1.0
            out.append(e)
    return out


def sym_from_params(params: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, n))
    for value, e in zip(params, sym_basis(n)):
        out += value * e
    return out


@dataclass
class MarginSolution:
    """Largest t with every block ⪰ tI (capped), and the LMI variables attaining it."""

    margin: float
    params: np.ndarray
    values: List[np.ndarray]
    status: str
    iterations: int


def solve_margin(blocks: Sequence[Block], num_params: int, tol: Tolerances,
                 cap: float = 1.0) -> MarginSolution:
    """max t s.t. F_b0 + Σ_k y_k F_bk − tI ⪰ 0 for every block b, t ≤ cap."""
    extended = []
    for f0, fk in blocks:
        n = f0.shape[0]
        if len(fk) != num_params:
            raise DimensionError('Every block needs one coefficient matrix per parameter')
        extended.append((f0, list(fk) + [-np.eye(n)]))
    cap_block = (np.array([[cap]]), [np.zeros((1, 1)) for _ in range(num_params)] + [-np.eye(1)])
    extended.append(cap_block)
    objective = np.zeros(num_params + 1)
    objective[-1] = 1.0
    solution = solve_sdp(lmi_problem(extended, objective), tol)
    if not is_usable(solution, tol):
        raise NumericalError(f'LMI margin problem failed with status {solution.status}',
                             solution.status)
    margin = float(solution.y[-1])
    logger.debug(f'LMI margin {margin:.3e} after {solution.iterations} iterations')
    return MarginSolution(margin, solution.y[:-1].copy(), list(solution.s_blocks[:-1]),
                          solution.status, solution.iterations)
