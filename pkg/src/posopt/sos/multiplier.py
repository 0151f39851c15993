"""Multiplier searches: (1+|x|²)^m f (Reznick) and |z|^{2N} p (Quillen)."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from ..errors import InputError
from ..poly import Poly, sum_of_squares_poly
from ..sdp import Tolerances
from .check import SosResult, sos_check
from .hermitian import HermitianPoly, HermitianSosResult, hermitian_sos_check

logger = logging.getLogger(__name__)

REZNICK = 'reznick'
QUILLEN = 'quillen'


@dataclass
class MultiplierResult:
    mode: str
    m: Optional[int]
    certificate: Optional[Union[SosResult, HermitianSosResult]] = None
    history: List[float] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.m is not None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'mode': self.mode, 'm': self.m, 'found': self.found,
                               'history': self.history}
        if self.certificate is not None:
            out['certificate'] = self.certificate.to_dict()
        return out


def multiplier_search(f: Union[Poly, HermitianPoly], mode: str = REZNICK, m_max: int = 3,
                      tol: Optional[Tolerances] = None) -> MultiplierResult:
    """Smallest m ≤ m_max whose multiplied polynomial is (hermitian) SOS.

    ``history`` collects the SOS margin (reznick) or the minimum coefficient
    matrix eigenvalue (quillen) of every attempt.
    """
    if m_max < 0:
        raise InputError('m_max must be non-negative')
    result = MultiplierResult(mode, None)
    if mode == REZNICK:
        if not isinstance(f, Poly):
            raise InputError('Reznick search needs a real polynomial')
        one = Poly.constant(f.num_vars, 1.0)
        base = one + sum_of_squares_poly(f.num_vars)
        current = f
        for m in range(m_max + 1):
            check = sos_check(current, tol)
            result.history.append(check.margin)
            logger.info(f'Reznick multiplier m={m}: margin {check.margin:.3e}')
            if check.is_sos:
                result.m, result.certificate = m, check
                return result
            current = base * current
    elif mode == QUILLEN:
        if not isinstance(f, HermitianPoly):
            raise InputError('Quillen search needs a hermitian polynomial')
        for n in range(m_max + 1):
            check = hermitian_sos_check(HermitianPoly.norm_power(f.num_vars, n) * f, tol)
            result.history.append(check.min_eig)
            logger.info(f'Quillen multiplier N={n}: min eigenvalue {check.min_eig:.3e}')
            if check.is_hsos:
                result.m, result.certificate = n, check
                return result
    else:
        raise InputError(f'Unknown multiplier mode {mode!r}')
    logger.warning(f'{mode} multiplier search exhausted at m_max={m_max}')
    return result
