"""Linear system commands: Schur complements, loops, dissipativity and DGKF feasibility."""

from typing import Any, Dict, List

import numpy as np

from ...systems import (
    DgkfPlant,
    StateSpaceSystem,
    close_loop,
    dgkf_check,
    dissipativity_check,
    gamma_sweep,
    hinf_closed_loop,
    schur_complement,
    simulate_storage,
    storage_blocks,
    storage_matrix,
)
from ...utils.serialization import matrix_option
from ..base_command import BaseCommand


def _system(command: BaseCommand, name: str) -> StateSpaceSystem:
    return StateSpaceSystem.from_dict(command.json_option(name))


def _plant(command: BaseCommand) -> DgkfPlant:
    data = dict(command.json_option('plant'))
    if command.option('gamma') is not None:
        data['gamma'] = command.float_option('gamma')
    return DgkfPlant.from_dict(data)


class SchurComplementCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'sys schur'

    @property
    def display_name(self) -> str:
        return 'Schur complement'

    @property
    def description(self) -> str:
        return 'α − βγ⁻¹βᵀ and the PSD equivalence for a symmetric block matrix'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'allow_pinv': False}

    @property
    def required_options(self) -> List[str]:
        return ['matrix']

    def run(self) -> Dict[str, Any]:
        M = matrix_option(self.json_option('matrix'), 'matrix', square=True)
        result = schur_complement(M, self.int_option('split'), bool(self.option('allow_pinv')))
        return {
            'verdict': 'psd' if result.matrix_psd else 'not_psd',
            'certificate': result.to_dict(),
            'diagnostics': {'equivalence_holds': result.equivalence_holds},
        }


class LoopCommand(BaseCommand):
    """Feedback interconnection, or the H∞ closed loop and its storage blocks."""

    @property
    def command_path(self) -> str:
        return 'sys loop'

    @property
    def display_name(self) -> str:
        return 'Close the loop'

    @property
    def description(self) -> str:
        return 'State-space realization of a plant in feedback with a controller'

    @property
    def required_options(self) -> List[str]:
        return ['plant', 'controller']

    def run(self) -> Dict[str, Any]:
        controller = _system(self, 'controller')
        if self.option('hinf'):
            plant = _plant(self)
            closed = hinf_closed_loop(plant, controller)
        else:
            closed = close_loop(_system(self, 'plant'), controller)
        certificate: Dict[str, Any] = {'closed_loop': closed.to_dict()}
        eigs = np.linalg.eigvals(closed.A)
        if self.option('E') is not None:
            E = matrix_option(self.json_option('E'), 'E', square=True)
            certificate['storage_matrix'] = storage_matrix(closed, E).tolist()
            if self.option('hinf'):
                blocks = storage_blocks(plant, controller, E)
                certificate['storage_blocks'] = {k: v.tolist() for k, v in blocks.items()}
        return {
            'verdict': 'stable' if float(eigs.real.max()) < 0.0 else 'not_stable',
            'certificate': certificate,
            'diagnostics': {'eigenvalues': [[float(e.real), float(e.imag)] for e in eigs]},
        }


class DissipativityCommand(BaseCommand):
    """Storage function search with Riccati and Hamiltonian cross-checks."""

    @property
    def command_path(self) -> str:
        return 'sys dissip'

    @property
    def display_name(self) -> str:
        return 'Dissipativity'

    @property
    def description(self) -> str:
        return 'Quadratic storage W with the dissipation LMI, W ⪰ 0'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'simulate': 0, 'T': 5.0, 'dt': 1e-3}

    @property
    def required_options(self) -> List[str]:
        return ['system']

    def run(self) -> Dict[str, Any]:
        system = _system(self, 'system')
        result = dissipativity_check(system, self.tol)
        diagnostics: Dict[str, Any] = {
            'margin': result.margin,
            'verdicts_agree': result.verdicts_agree,
            **result.diagnostics,
        }
        runs = self.int_option('simulate')
        if result.dissipative and runs:
            rng = self.rng()
            slacks = []
            for _ in range(runs):
                freqs = rng.uniform(0.1, 5.0, size=(3, system.m))
                amps = rng.standard_normal((3, system.m))
                x0 = rng.standard_normal(system.n)
                run = simulate_storage(
                    system, result.W,
                    lambda t, f=freqs, a=amps: (a * np.sin(f * t)).sum(axis=0),
                    self.float_option('dt'), self.float_option('T'), x0)
                slacks.append(run['slack'])
            diagnostics['simulation_min_slack'] = min(slacks)
        return {
            'verdict': 'dissipative' if result.dissipative else 'not_dissipative',
            'certificate': result.to_dict(),
            'diagnostics': diagnostics,
        }


class DgkfCommand(BaseCommand):
    """Joint feasibility of the DGKF inequalities in W = X⁻¹, Z = Y⁻¹."""

    @property
    def command_path(self) -> str:
        return 'sys dgkf'

    @property
    def display_name(self) -> str:
        return 'DGKF feasibility'

    @property
    def description(self) -> str:
        return 'H∞ suboptimal feasibility at level γ via the DGKF LMIs'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'literal': False, 'printed_b2': False}

    @property
    def required_options(self) -> List[str]:
        return ['plant']

    def run(self) -> Dict[str, Any]:
        plant = _plant(self)
        flags = {'literal': bool(self.option('literal')),
                 'printed_b2': bool(self.option('printed_b2'))}
        result = dgkf_check(plant, tol=self.tol, **flags)
        diagnostics: Dict[str, Any] = {'margin': result.margin, **result.diagnostics}
        if self.option('gammas'):
            gammas = [float(g) for g in self.json_option('gammas')]
            sweep = gamma_sweep(plant, gammas, tol=self.tol, **flags)
            diagnostics['sweep'] = [{'gamma': r.gamma, 'feasible': r.feasible, 'margin': r.margin}
                                    for r in sweep]
        return {
            'verdict': 'feasible' if result.feasible else 'infeasible',
            'certificate': result.to_dict(),
            'diagnostics': diagnostics,
        }
