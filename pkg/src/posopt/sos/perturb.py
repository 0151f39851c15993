"""Smallest Θ_r perturbation making a polynomial a sum of squares."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..errors import InputError, NumericalError
from ..poly import Monomial, Poly, graded_lex_monomials, poly_sum
from ..sdp import SdpProblem, Tolerances, is_usable, solve_sdp
from .check import Witness
from .gram import build_gram_system

logger = logging.getLogger(__name__)


def theta(num_vars: int, r: int) -> Poly:
    """Θ_r = 1 + x_1^{2r} + ... + x_g^{2r}."""
    one = Poly.constant(num_vars, 1.0)
    powers = [Poly.variable(num_vars, i + 1) ** (2 * r) for i in range(num_vars)]
    return poly_sum([one] + powers, num_vars)


@dataclass
class PerturbationResult:
    """ε* = min{L(f) : L(Θ_r) ≤ 1, L ≥ 0 on squares}; f + εΘ_r is SOS iff ε ≥ −ε*."""

    eps_star: float
    r: int
    gram: np.ndarray
    functional: Witness

    def to_dict(self) -> Dict[str, Any]:
        return {
            'eps_star': self.eps_star,
            'r': self.r,
            'gram': self.gram.tolist(),
            'functional': self.functional.to_dict(),
        }


def perturbation_eps(f: Poly, r: int, tol: Optional[Tolerances] = None) -> PerturbationResult:
    """Solve ``min ε ≥ 0 s.t. f + εΘ_r = V Ω Vᵀ, Ω ⪰ 0``; its negated optimum is ε*."""
    tol = tol or Tolerances()
    if r < 1 or 2 * r < f.degree:
        raise InputError(f'Need 2r ≥ deg f (r={r}, deg f={f.degree})')
    th = theta(f.num_vars, r)
    system = build_gram_system(f, basis=graded_lex_monomials(f.num_vars, r))
    monos = system.monomials
    n = system.size
    stack = system.constraint_stack()
    eps_column = np.array([-th.coefficient(a) for a in monos]).reshape(-1, 1, 1)
    problem = SdpProblem(
        (n, 1),
        [np.zeros((n, n)), np.ones((1, 1))],
        [stack, eps_column],
        np.array([f.coefficient(a) for a in monos]),
    )
    solution = solve_sdp(problem, tol)
    if not is_usable(solution, tol):
        raise NumericalError(f'Perturbation SDP failed with status {solution.status}',
                             solution.status)
    eps_min = float(solution.x_blocks[1][0, 0])
    values = {a: -float(v) for a, v in zip(monos, solution.y)}
    logger.info(f'perturbation_eps r={r}: ε* = {-eps_min:.6g}')
    one = Monomial.one(f.num_vars)
    values.setdefault(one, 0.0)
    return PerturbationResult(-eps_min, r, solution.x_blocks[0],
                              Witness(values, list(system.basis)))
