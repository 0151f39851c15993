"""Moment / SOS relaxation hierarchy and SOS programs."""

from .hierarchy import (
    ball_constant,
    bisect_bound,
    cube_bound,
    minimize_constrained,
    minimize_global,
)
from .problem import (
    INFEASIBLE_DUAL,
    NUMERICAL,
    OPTIMAL,
    PREORDER,
    QUADRATIC_MODULE,
    UNBOUNDED,
    RelaxationProblem,
    RelaxationResult,
    load_problem,
)
from .program import (
    AffineFamily,
    AffinePoly,
    LyapunovResult,
    SosProgramResult,
    lyapunov_search,
    sos_program,
)
from .saddle import SADDLE_TOL, certify_saddle, saddle_scale

__all__ = [
    'AffineFamily',
    'AffinePoly',
    'INFEASIBLE_DUAL',
    'LyapunovResult',
    'NUMERICAL',
    'OPTIMAL',
    'PREORDER',
    'QUADRATIC_MODULE',
    'RelaxationProblem',
    'RelaxationResult',
    'SADDLE_TOL',
    'SosProgramResult',
    'UNBOUNDED',
    'ball_constant',
    'bisect_bound',
    'certify_saddle',
    'cube_bound',
    'load_problem',
    'lyapunov_search',
    'minimize_constrained',
    'minimize_global',
    'saddle_scale',
    'sos_program',
]
