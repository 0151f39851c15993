"""Truncated moment problem commands."""

from typing import Any, Dict, List

from ...moments import (
    CIRCLE,
    NORM,
    REAL,
    MomentSequence,
    gauss_quadrature,
    hamburger_check,
    hankel_rank,
    jacobi_params,
    load_moments,
    parse_moments,
    trig_moment_check,
)
from ..base_command import BaseCommand


def _moments_option(command: BaseCommand, kind: str) -> MomentSequence:
    value = command.option('moments')
    if isinstance(value, str):
        return load_moments(value, kind)
    return parse_moments(value, kind)


class HamburgerCommand(BaseCommand):
    """Hankel PSD test of c_0..c_{2n} on the real line."""

    stieltjes = False

    @property
    def command_path(self) -> str:
        return 'moments hamburger'

    @property
    def display_name(self) -> str:
        return 'Hamburger moments'

    @property
    def description(self) -> str:
        return 'Necessary Hankel condition for a measure on R'

    @property
    def required_options(self) -> List[str]:
        return ['moments']

    def run(self) -> Dict[str, Any]:
        c = _moments_option(self, REAL)
        order = self.int_option('order')
        check = hamburger_check(c, order, stieltjes=self.stieltjes, tol=self.tol,
                                criterion=self.option('criterion', NORM))
        return {
            'verdict': 'feasible' if check.feasible else 'infeasible',
            'certificate': check.to_dict(),
            'diagnostics': {'hankel_rank': hankel_rank(c, check.order, self.tol.rank_tol)},
        }


class StieltjesCommand(HamburgerCommand):
    """Hankel and shifted Hankel PSD tests for a measure on [0, ∞)."""

    stieltjes = True

    @property
    def command_path(self) -> str:
        return 'moments stieltjes'

    @property
    def display_name(self) -> str:
        return 'Stieltjes moments'

    @property
    def description(self) -> str:
        return 'Necessary Hankel conditions for a measure on [0, ∞)'


class TrigMomentCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'moments trig'

    @property
    def display_name(self) -> str:
        return 'Trigonometric moments'

    @property
    def description(self) -> str:
        return 'Toeplitz PSD test of c_0..c_n on the unit circle'

    @property
    def required_options(self) -> List[str]:
        return ['moments']

    def run(self) -> Dict[str, Any]:
        c = _moments_option(self, CIRCLE)
        check = trig_moment_check(c, self.int_option('order'), self.tol,
                                  criterion=self.option('criterion', NORM))
        return {
            'verdict': 'feasible' if check.feasible else 'infeasible',
            'certificate': check.to_dict(),
            'diagnostics': {},
        }


class JacobiCommand(BaseCommand):
    """Three-term recurrence coefficients and the Gauss quadrature they induce."""

    @property
    def command_path(self) -> str:
        return 'moments jacobi'

    @property
    def display_name(self) -> str:
        return 'Jacobi parameters'

    @property
    def description(self) -> str:
        return 'Orthogonal polynomial recurrence (α_k, β_k) from moments'

    @property
    def required_options(self) -> List[str]:
        return ['moments']

    def run(self) -> Dict[str, Any]:
        c = _moments_option(self, REAL)
        params = jacobi_params(c, self.int_option('max_k'))
        certificate = params.to_dict()
        if params.length:
            nodes, weights = gauss_quadrature(params)
            certificate['quadrature'] = {'nodes': nodes.tolist(), 'weights': weights.tolist()}
        return {
            'verdict': 'computed',
            'certificate': certificate,
            'diagnostics': {'steps': params.length},
        }
