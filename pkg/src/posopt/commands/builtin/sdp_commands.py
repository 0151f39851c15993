"""SDP commands: solve (JSON or SDPA input), max-entropy completion, SDPA export."""

from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from ...errors import InputError
from ...sdp import (
    SdpProblem,
    is_usable,
    max_entropy,
    read_sdpa,
    solve_sdp,
    span_residual,
    write_sdpa,
)
from ...sos import build_gram_system, gram_sdp
from ..base_command import BaseCommand


def _problem(command: BaseCommand) -> SdpProblem:
    value = command.option('problem')
    if command.option('format') == 'sdpa':
        if not isinstance(value, str):
            raise InputError('SDPA input must be a file path or SDPA text')
        path = Path(value)
        return read_sdpa(path.read_text() if path.exists() else value)
    try:
        return SdpProblem.from_dict(command.json_option('problem'))
    except (KeyError, TypeError) as e:
        raise InputError(f'Malformed SDP problem: {e}')


class SdpSolveCommand(BaseCommand):
    """Primal-dual interior point solve with infeasibility certificates."""

    @property
    def command_path(self) -> str:
        return 'sdp solve'

    @property
    def display_name(self) -> str:
        return 'Solve SDP'

    @property
    def description(self) -> str:
        return 'Solve a block SDP given as JSON or SDPA'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'format': 'json'}

    @property
    def required_options(self) -> List[str]:
        return ['problem']

    def run(self) -> Dict[str, Any]:
        solution = solve_sdp(_problem(self), self.tol)
        return {
            'verdict': solution.status,
            'certificate': solution.to_dict(),
            'diagnostics': {'iterations': solution.iterations, 'gap': solution.gap,
                            'usable': is_usable(solution, self.tol)},
        }


class SdpEntropyCommand(BaseCommand):
    """Maximum log-det point of {Ω ⪰ 0 : tr(A_i Ω) = b_i}, or of the Gram set of f."""

    @property
    def command_path(self) -> str:
        return 'sdp entropy'

    @property
    def display_name(self) -> str:
        return 'Max-entropy completion'

    @property
    def description(self) -> str:
        return 'Maximize log det Ω over an affine slice of the PSD cone'

    def validate_options(self, options: Dict[str, Any]) -> bool:
        if options.get('f') is None and (options.get('a') is None or options.get('b') is None):
            raise InputError(f'{self.command_path}: give f or both a and b')
        return True

    def run(self) -> Dict[str, Any]:
        if self.option('f') is not None:
            system = build_gram_system(self.poly_option('f'))
            a_mats = list(system.constraint_stack())
            b = system.rhs()
        else:
            a_mats = [np.asarray(a, dtype=float) for a in self.json_option('a')]
            b = np.asarray(self.json_option('b'), dtype=float)
        solution = max_entropy(a_mats, b, self.tol)
        inverse_residual = span_residual(np.linalg.inv(solution.omega), a_mats)
        return {
            'verdict': 'optimal',
            'certificate': solution.to_dict(),
            'diagnostics': {'inverse_span_residual': inverse_residual},
        }


class SdpExportCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'sdp export'

    @property
    def display_name(self) -> str:
        return 'Export SDPA'

    @property
    def description(self) -> str:
        return 'Write a JSON SDP problem (or the Gram SDP of f) in SDPA sparse format'

    def validate_options(self, options: Dict[str, Any]) -> bool:
        if options.get('problem') is None and options.get('f') is None:
            raise InputError(f'{self.command_path}: give a problem or f')
        return True

    def run(self) -> Dict[str, Any]:
        if self.option('f') is not None:
            problem = gram_sdp(build_gram_system(self.poly_option('f')))
        else:
            problem = _problem(self)
        text = write_sdpa(problem)
        if self.option('sdpa_out'):
            Path(self.option('sdpa_out')).write_text(text)
        return {
            'verdict': 'exported',
            'certificate': {'sdpa': text},
            'diagnostics': {'block_sizes': list(problem.block_sizes),
                            'num_constraints': problem.num_constraints},
        }
