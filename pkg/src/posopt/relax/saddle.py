"""Saddle-point (complementarity) residuals of a relaxation result."""

from typing import Dict

import numpy as np

from ..errors import InputError
from ..moments import localizing_matrix
from .problem import RelaxationResult

# residuals above SADDLE_TOL·saddle_scale(result) disqualify an optimal status
SADDLE_TOL = 1e-5


def saddle_scale(result: RelaxationResult) -> float:
    """1 + |λ̂| + ‖f‖, the magnitude the saddle residuals are measured against."""
    bound = result.lower_bound if np.isfinite(result.lower_bound) else 0.0
    return 1.0 + abs(bound) + result.problem.objective.coeff_norm()


def certify_saddle(result: RelaxationResult) -> Dict[str, float]:
    """‖M_i Ω_i‖ and the balance |Σ tr(M_i Ω_i) − (L_ŷ(f) − λ̂)|.

    M_i is the localizing matrix of ŷ for the i-th product (M_0 the moment
    matrix), on the same basis as Ω_i.
    """
    if result.moments is None or not result.grams:
        raise InputError('Saddle certification needs both the moments and the Gram blocks')
    comp_sq = 0.0
    trace_total = 0.0
    for gram, basis, product in zip(result.grams, result.bases, result.products):
        order = max((m.degree for m in basis), default=0)
        local = localizing_matrix(result.moments, product, order).matrix
        prod = local @ gram
        comp_sq += float(np.sum(prod * prod))
        trace_total += float(np.trace(prod))
    value = result.moments.functional(result.problem.objective)
    balance = abs(trace_total - (value - result.lower_bound))
    return {
        'complementarity_residual': float(np.sqrt(comp_sq)),
        'balanced_residual': balance,
    }
