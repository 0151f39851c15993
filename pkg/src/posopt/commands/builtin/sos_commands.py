"""Sum-of-squares commands: check, extract, hermitian squares, multipliers, perturbation."""

import re
from typing import Any, Dict, List

from ...sos import (
    REZNICK,
    HermitianPoly,
    hermitian_sos_check,
    multiplier_search,
    perturbation_eps,
    sos_check,
    to_real_variables,
    verify_witness,
)
from ..base_command import BaseCommand


def _hermitian_option(command: BaseCommand, name: str = 'p') -> HermitianPoly:
    text = str(command.option(name, ''))
    indices = [int(i) for i in re.findall(r'zb?(\d+)', text)]
    num_vars = command.int_option('num_vars') or max(indices, default=1)
    return HermitianPoly.parse(text, num_vars)


class SosCheckCommand(BaseCommand):
    """Gram-matrix SOS test with a certificate or a separating functional."""

    @property
    def command_path(self) -> str:
        return 'sos check'

    @property
    def display_name(self) -> str:
        return 'SOS check'

    @property
    def description(self) -> str:
        return 'Decide whether f is a sum of squares'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'prune': True}

    @property
    def required_options(self) -> List[str]:
        return ['f']

    def run(self) -> Dict[str, Any]:
        f = self.poly_option('f')
        result = sos_check(f, self.tol, prune=bool(self.option('prune')))
        diagnostics: Dict[str, Any] = {'margin': result.margin, **result.solver}
        if result.reason:
            diagnostics['reason'] = result.reason
        if result.witness is not None:
            diagnostics['witness_check'] = verify_witness(result.witness, f, self.rng())
        return {
            'verdict': 'sos' if result.is_sos else 'not_sos',
            'certificate': result.to_dict(),
            'diagnostics': diagnostics,
        }


class SosExtractCommand(BaseCommand):
    """Squares q_i with f = Σ q_i²."""

    @property
    def command_path(self) -> str:
        return 'sos extract'

    @property
    def display_name(self) -> str:
        return 'Extract squares'

    @property
    def description(self) -> str:
        return 'Factor a Gram certificate of f into explicit squares'

    @property
    def required_options(self) -> List[str]:
        return ['f']

    def run(self) -> Dict[str, Any]:
        f = self.poly_option('f')
        result = sos_check(f, self.tol)
        if not result.is_sos or result.certificate is None:
            return {'verdict': 'not_sos', 'diagnostics': {'margin': result.margin}}
        certificate = result.certificate
        return {
            'verdict': 'sos',
            'certificate': {
                'squares': [q.render() for q in certificate.squares],
                'rank': certificate.rank,
                'residual': certificate.residual,
            },
            'diagnostics': {'margin': result.margin},
        }


class HermitianSosCommand(BaseCommand):
    """Sum of hermitian squares |q(z)|² via the coefficient matrix; optionally the real rewrite."""

    @property
    def command_path(self) -> str:
        return 'sos hsos'

    @property
    def display_name(self) -> str:
        return 'Hermitian SOS'

    @property
    def description(self) -> str:
        return 'Decide whether p(z, z̄) is a sum of hermitian squares'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'real': False}

    @property
    def required_options(self) -> List[str]:
        return ['p']

    def run(self) -> Dict[str, Any]:
        p = _hermitian_option(self)
        result = hermitian_sos_check(p, self.tol)
        diagnostics: Dict[str, Any] = {'min_eig': result.min_eig}
        if self.option('real'):
            real = sos_check(to_real_variables(p), self.tol)
            diagnostics['real_rewrite'] = {'is_sos': real.is_sos, 'margin': real.margin}
        return {
            'verdict': 'hsos' if result.is_hsos else 'not_hsos',
            'certificate': result.to_dict(),
            'diagnostics': diagnostics,
        }


class MultiplierCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'sos multiplier'

    @property
    def display_name(self) -> str:
        return 'Multiplier search'

    @property
    def description(self) -> str:
        return 'Smallest Reznick (1+|x|²)^m or Quillen |z|^{2N} multiplier making f SOS'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'mode': REZNICK, 'm_max': 3}

    @property
    def required_options(self) -> List[str]:
        return ['f']

    def run(self) -> Dict[str, Any]:
        mode = str(self.option('mode'))
        target = self.poly_option('f') if mode == REZNICK else _hermitian_option(self, 'f')
        result = multiplier_search(target, mode, self.int_option('m_max'), self.tol)
        return {
            'verdict': 'found' if result.found else 'not_found',
            'certificate': result.to_dict(),
            'diagnostics': {'mode': mode, 'attempts': len(result.history)},
        }


class PerturbCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'sos perturb'

    @property
    def display_name(self) -> str:
        return 'SOS perturbation'

    @property
    def description(self) -> str:
        return 'Smallest ε with f + εΘ_r SOS, Θ_r = 1 + Σ x_i^{2r}'

    @property
    def required_options(self) -> List[str]:
        return ['f', 'r']

    def run(self) -> Dict[str, Any]:
        f = self.poly_option('f')
        result = perturbation_eps(f, self.int_option('r'), self.tol)
        slack = 10.0 * self.tol.feas_tol * (1.0 + f.coeff_norm())
        return {
            'verdict': 'sos' if result.eps_star >= -slack else 'needs_perturbation',
            'certificate': result.to_dict(),
            'diagnostics': {'eps_required': max(0.0, -result.eps_star)},
        }
