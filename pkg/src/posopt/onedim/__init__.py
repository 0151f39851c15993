"""One-variable positivity tools."""

from .disk import DiskCount, disk_form, disk_root_count, reflected
from .fejer import (
    FejerFactor,
    TrigPoly,
    complex_array,
    modulus_squared,
    riesz_fejer_factor,
    to_complex,
)
from .pick import (
    CaratheodoryResult,
    PickData,
    PickResult,
    Realization,
    caratheodory_pick,
    pick_interpolate,
    pick_matrix,
)
from .schur import SchurSequence, schur_parameters, toeplitz_contraction_norm
from .sturm import SturmChain, real_root_bound, sturm_chain, sturm_count

__all__ = [
    'CaratheodoryResult',
    'DiskCount',
    'FejerFactor',
    'PickData',
    'PickResult',
    'Realization',
    'SchurSequence',
    'SturmChain',
    'TrigPoly',
    'caratheodory_pick',
    'complex_array',
    'disk_form',
    'disk_root_count',
    'modulus_squared',
    'pick_interpolate',
    'pick_matrix',
    'real_root_bound',
    'reflected',
    'riesz_fejer_factor',
    'schur_parameters',
    'sturm_chain',
    'sturm_count',
    'to_complex',
    'toeplitz_contraction_norm',
]
