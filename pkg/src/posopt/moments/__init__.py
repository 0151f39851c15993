"""Moment sequences and truncated moment problems."""

from .checks import (
    CRITERIA,
    NORM,
    SCALED,
    MomentCheck,
    hamburger_check,
    hankel_rank,
    trig_moment_check,
)
from .io import load_moments, parse_moments
from .jacobi import JacobiParams, gauss_quadrature, jacobi_params
from .sequence import (
    CIRCLE,
    MULTIVARIATE,
    REAL,
    HankelMatrix,
    MomentSequence,
    localizing_matrix,
    moment_matrix,
    shifted_hankel,
)

__all__ = [
    'CIRCLE',
    'CRITERIA',
    'HankelMatrix',
    'JacobiParams',
    'MULTIVARIATE',
    'MomentCheck',
    'MomentSequence',
    'NORM',
    'REAL',
    'SCALED',
    'gauss_quadrature',
    'hamburger_check',
    'hankel_rank',
    'jacobi_params',
    'load_moments',
    'localizing_matrix',
    'moment_matrix',
    'parse_moments',
    'shifted_hankel',
    'trig_moment_check',
]
