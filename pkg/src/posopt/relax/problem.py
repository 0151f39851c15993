"""Relaxation problem and result records, and problem-file loading."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..errors import InputError
from ..moments import MomentSequence
from ..poly import Monomial, Poly, infer_num_vars, parse_poly

QUADRATIC_MODULE = 'quadratic_module'
PREORDER = 'preorder'
MODES = (QUADRATIC_MODULE, PREORDER)

# Relaxation statuses; "dual" refers to the SOS side
OPTIMAL = 'optimal'
INFEASIBLE_DUAL = 'infeasible_dual'
UNBOUNDED = 'unbounded'
NUMERICAL = 'numerical'


@dataclass
class RelaxationProblem:
    """min f(x) s.t. p_i(x) ≥ 0, relaxed at order k."""

    objective: Poly
    constraints: List[Poly] = field(default_factory=list)
    order: int = 1
    mode: str = QUADRATIC_MODULE
    ball: Union[bool, float] = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f'Unknown certificate mode {self.mode!r}')
        g = self.objective.num_vars
        if any(p.num_vars != g for p in self.constraints):
            raise InputError('Objective and constraints use different variable counts')
        top = max([self.objective.degree] + [p.degree for p in self.constraints])
        if 2 * self.order < top:
            raise InputError(f'Order {self.order} too small: 2k must be at least {top}')

    @property
    def num_vars(self) -> int:
        return self.objective.num_vars

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RelaxationProblem':
        """``{objective, constraints[], order, mode, ball}`` with polynomial strings."""
        if 'objective' not in data:
            raise InputError('Problem needs an objective')
        texts = [data['objective']] + list(data.get('constraints', []))
        num_vars = int(data.get('num_vars') or max(infer_num_vars(t) for t in texts))
        objective = parse_poly(data['objective'], num_vars)
        constraints = [parse_poly(t, num_vars) for t in data.get('constraints', [])]
        top = max([objective.degree] + [p.degree for p in constraints] + [0])
        order = int(data.get('order') or max(1, (top + 1) // 2))
        ball = data.get('ball') or False
        if not isinstance(ball, bool):
            ball = float(ball)
        return cls(objective, constraints, order, data.get('mode', QUADRATIC_MODULE), ball)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'objective': self.objective.render(),
            'constraints': [p.render() for p in self.constraints],
            'order': self.order,
            'mode': self.mode,
            'ball': self.ball,
        }


def load_problem(path: Union[str, Path]) -> RelaxationProblem:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f'Problem file {path} is not valid JSON: {exc}') from exc
    return RelaxationProblem.from_dict(data)


@dataclass
class RelaxationResult:
    """Both sides of one relaxation.

    ``multipliers[i]`` is the SOS polynomial s_i paired with ``products[i]``
    (1 for s_0, then p_i or products p^σ), so f − λ̂ = Σ s_i·products[i].
    """

    lower_bound: float
    status: str
    problem: RelaxationProblem
    moments: Optional[MomentSequence] = None
    grams: List[np.ndarray] = field(default_factory=list)
    bases: List[List[Monomial]] = field(default_factory=list)
    products: List[Poly] = field(default_factory=list)
    multipliers: List[Poly] = field(default_factory=list)
    gap: float = 0.0
    minimizer_candidate: Optional[np.ndarray] = None
    lagrange: List[float] = field(default_factory=list)
    certificate_residual: Optional[float] = None
    moment_rank: Optional[int] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def gram(self) -> Optional[np.ndarray]:
        return self.grams[0] if self.grams else None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'lower_bound': self.lower_bound,
            'status': self.status,
            'gap': self.gap,
            'problem': self.problem.to_dict(),
        }
        if self.moments is not None:
            out['moments'] = self.moments.to_dict()
        if self.grams:
            out['grams'] = [g.tolist() for g in self.grams]
            out['bases'] = [[m.key_string() for m in b] for b in self.bases]
            out['products'] = [p.render() for p in self.products]
            out['multipliers'] = [s.render() for s in self.multipliers]
        if self.minimizer_candidate is not None:
            out['minimizer_candidate'] = self.minimizer_candidate.tolist()
            out['lagrange'] = self.lagrange
        if self.certificate_residual is not None:
            out['certificate_residual'] = self.certificate_residual
        if self.moment_rank is not None:
            out['moment_rank'] = self.moment_rank
        if self.diagnostics:
            out['diagnostics'] = self.diagnostics
        return out
