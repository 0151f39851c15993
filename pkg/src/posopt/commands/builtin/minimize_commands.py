"""Polynomial minimization commands: global and constrained relaxations, Lyapunov search."""

from typing import Any, Dict, List

from ...errors import InputError
from ...poly import infer_num_vars, parse_poly
from ...relax import (
    QUADRATIC_MODULE,
    RelaxationProblem,
    RelaxationResult,
    lyapunov_search,
    minimize_constrained,
    minimize_global,
)
from ..base_command import BaseCommand


def _relaxation_payload(result: RelaxationResult) -> Dict[str, Any]:
    return {
        'verdict': result.status,
        'certificate': result.to_dict(),
        'diagnostics': {
            'lower_bound': result.lower_bound,
            'certificate_residual': result.certificate_residual,
            'moment_rank': result.moment_rank,
            **result.diagnostics,
        },
    }


class MinimizeGlobalCommand(BaseCommand):
    """Unconstrained lower bound λ with f − λ SOS, and its moment dual."""

    @property
    def command_path(self) -> str:
        return 'minimize global'

    @property
    def display_name(self) -> str:
        return 'Global minimization'

    @property
    def description(self) -> str:
        return 'SOS / moment lower bound on min f over R^g'

    @property
    def required_options(self) -> List[str]:
        return ['f']

    def run(self) -> Dict[str, Any]:
        f = self.poly_option('f')
        return _relaxation_payload(minimize_global(f, self.int_option('order'), self.tol))


class MinimizeConstrainedCommand(BaseCommand):
    """Relaxation over {p_i ≥ 0} from a problem file or inline options."""

    @property
    def command_path(self) -> str:
        return 'minimize constrained'

    @property
    def display_name(self) -> str:
        return 'Constrained minimization'

    @property
    def description(self) -> str:
        return 'Quadratic-module or preorder relaxation of min f s.t. p_i ≥ 0'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'mode': QUADRATIC_MODULE}

    def validate_options(self, options: Dict[str, Any]) -> bool:
        if options.get('problem') is None and not options.get('f'):
            raise InputError(f'{self.command_path}: give a problem file or an objective f')
        return True

    def run(self) -> Dict[str, Any]:
        problem = self.option('problem')
        if problem is not None:
            data = self.json_option('problem')
        else:
            data = {
                'objective': self.option('f'),
                'constraints': list(self.option('constraints', [])),
                'order': self.option('order'),
                'mode': self.option('mode'),
                'ball': self.option('ball'),
                'num_vars': self.option('num_vars'),
            }
        relaxation = RelaxationProblem.from_dict(data)
        return _relaxation_payload(minimize_constrained(relaxation, self.tol))


class LyapunovCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'minimize lyapunov'

    @property
    def display_name(self) -> str:
        return 'Lyapunov search'

    @property
    def description(self) -> str:
        return 'SOS Lyapunov function V for dx/dt = a(x): V − ε|x|² and −∇V·a SOS'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'degree': 2, 'eps': 1e-3}

    @property
    def required_options(self) -> List[str]:
        return ['field']

    def run(self) -> Dict[str, Any]:
        texts = [str(t) for t in self.option('field')]
        if not texts:
            raise InputError('Vector field needs at least one component')
        inferred = max([len(texts)] + [infer_num_vars(t) for t in texts])
        num_vars = self.int_option('num_vars') or inferred
        vector_field = [parse_poly(t, num_vars) for t in texts]
        result = lyapunov_search(vector_field, self.int_option('degree'),
                                 self.float_option('eps'), self.tol)
        return {
            'verdict': 'lyapunov_found' if result.feasible else 'not_found',
            'certificate': result.to_dict(),
            'diagnostics': {'status': result.program.status, 'margin': result.program.margin},
        }
