"""Maximum-determinant completion of a linear matrix family.

Maximizes log det Ω over {Ω ≻ 0 : tr(A_i Ω) = b_i}. At the optimum Ω⁻¹ lies in
span{A_i}; for Gram systems this means the inverse has Hankel structure.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np
from scipy import linalg

from ..errors import DimensionError, InfeasibleError, InputError, NumericalError
from .problem import DUAL_INFEASIBLE, PRIMAL_INFEASIBLE, SdpProblem, symmetrize
from .solver import is_usable, solve_sdp
from .tolerances import Tolerances

logger = logging.getLogger(__name__)

_ARMIJO = 0.25
_MIN_STEP = 1e-12


@dataclass
class MaxEntropySolution:
    omega: np.ndarray
    logdet: float
    iterations: int
    kkt_residual: float
    constraint_residual: float

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.omega)[0])

    def to_dict(self) -> Dict[str, Any]:
        return {
            'omega': self.omega.tolist(),
            'logdet': self.logdet,
            'iterations': self.iterations,
            'kkt_residual': self.kkt_residual,
            'constraint_residual': self.constraint_residual,
            'min_eigenvalue': self.min_eigenvalue,
        }


def _stack(a_mats: Sequence[np.ndarray]) -> np.ndarray:
    if not len(a_mats):
        raise InputError('max_entropy needs at least one constraint')
    stacked = np.stack([symmetrize(np.asarray(a, dtype=float)) for a in a_mats])
    if stacked.ndim != 3 or stacked.shape[1] != stacked.shape[2]:
        raise DimensionError('Constraint matrices must be square and of equal size')
    return stacked


def _interior_point(a: np.ndarray, b: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Positive definite feasible point from max t s.t. tr(A_i(Ω' + tI)) = b_i, Ω' ⪰ 0."""
    m, n, _ = a.shape
    traces = np.trace(a, axis1=1, axis2=2)
    problem = SdpProblem((n,), [np.zeros((n, n))], [a], b, free_c=np.array([-1.0]),
                         free_a=traces.reshape(m, 1))
    solution = solve_sdp(problem, tol)
    if solution.status == PRIMAL_INFEASIBLE:
        raise InfeasibleError('Constraints admit no positive semidefinite point')
    if solution.status == DUAL_INFEASIBLE:
        raise InputError('Feasible set is unbounded along the identity; log det has no maximum')
    if not is_usable(solution, tol):
        raise NumericalError('Could not locate an interior feasible point', status=solution.status)
    t = float(solution.free[0])
    scale = max(1.0, float(np.linalg.norm(solution.x_blocks[0], 2)))
    if t <= tol.psd_tol * scale:
        raise InfeasibleError(f'No positive definite feasible point (largest margin {t:.3e})')
    return symmetrize(solution.x_blocks[0] + t * np.eye(n))


def span_residual(matrix: np.ndarray, a_mats: Sequence[np.ndarray]) -> float:
    """Relative norm of the component of ``matrix`` orthogonal to span{A_i}."""
    a = _stack(a_mats)
    basis = a.reshape(a.shape[0], -1).T
    target = np.asarray(matrix, dtype=float).reshape(-1)
    coeffs = np.linalg.lstsq(basis, target, rcond=None)[0]
    norm = float(np.linalg.norm(target))
    return float(np.linalg.norm(target - basis @ coeffs)) / max(norm, 1e-300)


def max_entropy(
    a_mats: Sequence[np.ndarray],
    b: Sequence[float],
    tol: Optional[Tolerances] = None,
    max_iter: int = 100,
) -> MaxEntropySolution:
    """Maximize log det Ω subject to tr(A_i Ω) = b_i by damped Newton steps.

    Raises:
        InfeasibleError: no positive definite point satisfies the constraints.
    """
    tol = tol or Tolerances()
    a = _stack(a_mats)
    b = np.asarray(b, dtype=float).reshape(-1)
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f'{a.shape[0]} constraint matrices but {b.shape[0]} right-hand sides')

    omega = _interior_point(a, b, tol)
    n = omega.shape[0]

    def apply(mat):
        return np.einsum('kij,ij->k', a, mat)

    iterations = 0
    for iterations in range(1, max_iter + 1):
        factor = linalg.cho_factor(omega)
        current = 2.0 * float(np.sum(np.log(np.diag(factor[0]))))
        a_omega = apply(omega)
        residual = b - a_omega
        aw = np.einsum('kij,jl->kil', a, omega)
        gram = np.einsum('kij,lji->kl', aw, aw)
        nu = np.linalg.lstsq(gram, a_omega - residual, rcond=None)[0]
        delta = symmetrize(omega - omega @ np.einsum('k,kij->ij', nu, a) @ omega)

        scaled = linalg.cho_solve(factor, delta)
        decrement = float(np.trace(scaled @ scaled))
        slope = float(np.trace(scaled))
        feasible = np.linalg.norm(residual) <= tol.feas_tol * (1.0 + np.linalg.norm(b))
        logger.debug(f'entropy iter {iterations}: logdet={current:.12g} decrement={decrement:.3e}')
        if feasible and decrement <= 1e-20 * n:
            break

        step = 1.0
        while True:
            candidate = symmetrize(omega + step * delta)
            try:
                cand_factor = linalg.cholesky(candidate, lower=True)
            except linalg.LinAlgError:
                cand_factor = None
            if cand_factor is not None:
                value = 2.0 * float(np.sum(np.log(np.diag(cand_factor))))
                if not feasible or value >= current + _ARMIJO * step * slope:
                    break
            step *= 0.5
            if step < _MIN_STEP:
                raise NumericalError('Line search failed in max_entropy')
        omega = candidate
    else:
        logger.warning(f'max_entropy reached {max_iter} iterations without converging')

    inverse = linalg.cho_solve(linalg.cho_factor(omega), np.eye(n))
    kkt = span_residual(inverse, a)
    constraint = float(np.abs(apply(omega) - b).max())
    logdet = float(np.linalg.slogdet(omega)[1])
    if kkt > 1e-6:
        logger.warning(f'max_entropy KKT residual {kkt:.2e} above 1e-6')
    logger.info(f'max_entropy: logdet={logdet:.10g} after {iterations} Newton steps')
    return MaxEntropySolution(omega, logdet, iterations, kkt, constraint)
