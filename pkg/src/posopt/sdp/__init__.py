"""Dense semidefinite programming core."""

from .entropy import MaxEntropySolution, max_entropy, span_residual
from .factor import (
    INDEFINITE,
    PD,
    PSD,
    PsdFactor,
    is_psd,
    min_eigenvalue,
    numerical_rank,
    psd_factor,
)
from .problem import (
    DUAL_INFEASIBLE,
    OPTIMAL,
    PRIMAL_INFEASIBLE,
    SLOW_PROGRESS,
    SdpProblem,
    SdpSolution,
    lmi_problem,
    symmetrize,
)
from .sdpa import load_sdpa, read_sdpa, save_sdpa, write_sdpa
from .solver import dual_ray_violation, is_usable, primal_ray_violation, solve_sdp
from .tolerances import Tolerances

__all__ = [
    'DUAL_INFEASIBLE',
    'INDEFINITE',
    'MaxEntropySolution',
    'OPTIMAL',
    'PD',
    'PRIMAL_INFEASIBLE',
    'PSD',
    'PsdFactor',
    'SLOW_PROGRESS',
    'SdpProblem',
    'SdpSolution',
    'Tolerances',
    'dual_ray_violation',
    'is_psd',
    'is_usable',
    'lmi_problem',
    'load_sdpa',
    'max_entropy',
    'min_eigenvalue',
    'numerical_rank',
    'primal_ray_violation',
    'psd_factor',
    'read_sdpa',
    'save_sdpa',
    'solve_sdp',
    'span_residual',
    'symmetrize',
    'write_sdpa',
]
