"""Sums of squares: Gram systems, certificates, witnesses and multipliers."""

from .check import SosCertificate, SosResult, Witness, sos_check, verify_certificate, verify_witness
from .gram import GramSystem, build_gram_system, extract_squares, gram_sdp, gram_to_lmi
from .hermitian import HermitianPoly, HermitianSosResult, hermitian_sos_check, to_real_variables
from .multiplier import QUILLEN, REZNICK, MultiplierResult, multiplier_search
from .perturb import PerturbationResult, perturbation_eps, theta

__all__ = [
    'GramSystem',
    'HermitianPoly',
    'HermitianSosResult',
    'MultiplierResult',
    'PerturbationResult',
    'QUILLEN',
    'REZNICK',
    'SosCertificate',
    'SosResult',
    'Witness',
    'build_gram_system',
    'extract_squares',
    'gram_sdp',
    'gram_to_lmi',
    'hermitian_sos_check',
    'multiplier_search',
    'perturbation_eps',
    'sos_check',
    'theta',
    'to_real_variables',
    'verify_certificate',
    'verify_witness',
]
