"""Linear systems: Schur complements, interconnections, dissipativity and DGKF."""

from .dgkf import DgkfResult, dgkf_check, dgkf_x, dgkf_y, gamma_sweep, x_side_lmi, y_side_lmi
from .dissipativity import (
    DissipativityResult,
    LmiCertificate,
    dissipativity_check,
    hamiltonian_solution,
    riccati_map,
    simulate_storage,
    storage_lmi,
)
from .lmitools import MarginSolution, solve_margin, sym_basis, sym_from_params
from .loop import close_loop, hinf_closed_loop, storage_blocks, storage_matrix
from .schur import SchurResult, schur_complement
from .statespace import (
    DgkfPlant,
    StateSpaceSystem,
    controllability_matrix,
    is_reachable,
    load_plant,
    load_system,
)

__all__ = [
    'DgkfPlant',
    'DgkfResult',
    'DissipativityResult',
    'LmiCertificate',
    'MarginSolution',
    'SchurResult',
    'StateSpaceSystem',
    'close_loop',
    'controllability_matrix',
    'dgkf_check',
    'dgkf_x',
    'dgkf_y',
    'dissipativity_check',
    'gamma_sweep',
    'hamiltonian_solution',
    'hinf_closed_loop',
    'is_reachable',
    'load_plant',
    'load_system',
    'riccati_map',
    'schur_complement',
    'simulate_storage',
    'solve_margin',
    'storage_blocks',
    'storage_lmi',
    'storage_matrix',
    'sym_basis',
    'sym_from_params',
    'x_side_lmi',
    'y_side_lmi',
]
