"""One-variable commands: Riesz-Fejér, Schur, Sturm, disk root counts, Pick interpolation."""

from typing import Any, Dict, List

import numpy as np

from ...errors import InputError
from ...onedim import (
    PickData,
    TrigPoly,
    caratheodory_pick,
    complex_array,
    disk_root_count,
    modulus_squared,
    pick_interpolate,
    riesz_fejer_factor,
    schur_parameters,
    sturm_chain,
    sturm_count,
)
from ..base_command import BaseCommand


class FejerCommand(BaseCommand):
    """Factor a nonnegative trigonometric polynomial as |q(e^{iθ})|²."""

    @property
    def command_path(self) -> str:
        return 'one fejer'

    @property
    def display_name(self) -> str:
        return 'Riesz-Fejér factorization'

    @property
    def description(self) -> str:
        return 'Analytic q with |q|² = p for coefficients c_{-d}..c_d (or q itself)'

    def validate_options(self, options: Dict[str, Any]) -> bool:
        if options.get('coeffs') is None and options.get('q') is None:
            raise InputError(f'{self.command_path}: give coeffs c_{{-d}}..c_d or q')
        return True

    def run(self) -> Dict[str, Any]:
        if self.option('coeffs') is not None:
            p = TrigPoly.from_values(self.json_option('coeffs'))
        else:
            p = modulus_squared(complex_array(self.json_option('q')))
        factor = riesz_fejer_factor(p)
        return {
            'verdict': 'factored',
            'certificate': factor.to_dict(),
            'diagnostics': {'degree': factor.degree, 'input': p.to_list()},
        }


class SchurCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'one schur'

    @property
    def display_name(self) -> str:
        return 'Schur parameters'

    @property
    def description(self) -> str:
        return 'Schur recursion on Taylor data c_0..c_m of a disk-to-disk function'

    @property
    def required_options(self) -> List[str]:
        return ['taylor']

    def run(self) -> Dict[str, Any]:
        result = schur_parameters(complex_array(self.json_option('taylor')))
        return {
            'verdict': 'feasible' if result.feasible else 'infeasible',
            'certificate': result.to_dict(),
            'diagnostics': {'contraction_norm': result.contraction_norm},
        }


class SturmCommand(BaseCommand):
    """Distinct real roots in (lo, hi] by exact Sturm sign variations."""

    @property
    def command_path(self) -> str:
        return 'one sturm'

    @property
    def display_name(self) -> str:
        return 'Sturm root count'

    @property
    def description(self) -> str:
        return 'Number of distinct real roots of a univariate polynomial'

    @property
    def required_options(self) -> List[str]:
        return ['f']

    def run(self) -> Dict[str, Any]:
        p = self.poly_option('f', num_vars=1)
        count = sturm_count(p, self.float_option('lo'), self.float_option('hi'))
        chain = sturm_chain(p)
        return {
            'verdict': 'computed',
            'certificate': {
                'count': count,
                'bound': chain.bound,
                'chain': [q.render() for q in chain.chain],
            },
            'diagnostics': {'degree': p.degree},
        }


class DiskCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'one disk'

    @property
    def display_name(self) -> str:
        return 'Disk root count'

    @property
    def description(self) -> str:
        return 'Roots inside / on / outside the unit circle from a Hermitian form signature'

    @property
    def required_options(self) -> List[str]:
        return ['coeffs']

    def run(self) -> Dict[str, Any]:
        coeffs = complex_array(self.json_option('coeffs'))
        count = disk_root_count(coeffs, self.tol.rank_tol)
        roots = np.roots(coeffs[::-1]) if coeffs.size > 1 else np.zeros(0)
        return {
            'verdict': 'computed',
            'certificate': count.to_dict(),
            'diagnostics': {'root_moduli': sorted(float(abs(r)) for r in roots)},
        }


class PickCommand(BaseCommand):
    """Disk (Nevanlinna-Pick) or right half-plane (Carathéodory) interpolation."""

    @property
    def command_path(self) -> str:
        return 'one pick'

    @property
    def display_name(self) -> str:
        return 'Pick interpolation'

    @property
    def description(self) -> str:
        return 'Solvability of f(a_i) = d_i by the Pick matrix, with a realization'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'variant': 'disk'}

    @property
    def required_options(self) -> List[str]:
        return ['nodes', 'values']

    def run(self) -> Dict[str, Any]:
        nodes = complex_array(self.json_option('nodes'))
        values = complex_array(self.json_option('values'))
        variant = self.option('variant')
        if variant == 'disk':
            result = pick_interpolate(PickData(nodes, values))
        elif variant == 'caratheodory':
            result = caratheodory_pick(nodes, values)
        else:
            raise InputError(f'Unknown Pick variant {variant!r}; use disk or caratheodory')
        return {
            'verdict': 'feasible' if result.feasible else 'infeasible',
            'certificate': result.to_dict(),
            'diagnostics': {'variant': variant, 'min_eig': result.min_eig},
        }
