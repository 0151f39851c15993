"""DGKF H∞ feasibility in the convexifying variables W = X⁻¹, Z = Y⁻¹.

With A_x = A − B2 C1 and A^× = A − B1 C2, the Riccati inequalities

    DGKF_X = A_xᵀX + X A_x + X(γ⁻²B1B1ᵀ − B2B2ᵀ)X + C1ᵀC1 ⪯ 0
    DGKF_Y = A^×Y + Y A^×ᵀ + Y(γ⁻²C1ᵀC1 − C2ᵀC2)Y + B1B1ᵀ ⪯ 0

become, after congruence with W (resp. Z) and a Schur complement,

    [[A_x W + W A_xᵀ + γ⁻²B1B1ᵀ − B2B2ᵀ,  W C1ᵀ], [C1 W, −I]] ⪯ 0
    [[Z A^× + A^×ᵀ Z + γ⁻²C1ᵀC1 − C2ᵀC2,  Z B1 ], [B1ᵀ Z, −I]] ⪯ 0

and the coupling X − Y⁻¹ ≺ 0 becomes [[Z, I], [I, W]] ≻ 0.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import InputError
from ..sdp import Tolerances
from .dissipativity import LmiCertificate
from .lmitools import solve_margin, sym_basis, sym_from_params
from .statespace import DgkfPlant

logger = logging.getLogger(__name__)

NEAR_SINGULAR = 1e-8


@dataclass
class DgkfResult:
    feasible: bool
    margin: float
    gamma: float
    W: Optional[np.ndarray] = None
    Z: Optional[np.ndarray] = None
    coupling_min_eig: Optional[float] = None
    certificate: Optional[LmiCertificate] = None
    near_singular: bool = False
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'feasible': self.feasible,
            'margin': self.margin,
            'gamma': self.gamma,
            'W': None if self.W is None else self.W.tolist(),
            'Z': None if self.Z is None else self.Z.tolist(),
            'coupling_min_eig': self.coupling_min_eig,
            'near_singular': self.near_singular,
            'certificate': None if self.certificate is None else self.certificate.to_dict(),
            'diagnostics': self.diagnostics,
        }


def _b2_term(plant: DgkfPlant, printed_b2: bool) -> np.ndarray:
    B2 = plant.B2
    if not printed_b2:
        return B2 @ B2.T
    if B2.shape[0] != B2.shape[1]:
        raise InputError('The printed B2⁻¹B2ᵀ term needs a square B2')
    try:
        term = np.linalg.solve(B2, B2.T)
    except np.linalg.LinAlgError as exc:
        raise InputError('The printed B2⁻¹B2ᵀ term needs an invertible B2') from exc
    return (term + term.T) / 2.0


def x_side_lmi(plant: DgkfPlant, W: np.ndarray, literal: bool = False,
               printed_b2: bool = False) -> np.ndarray:
    """W·DGKF_X(W⁻¹)·W in LMI form (the constant C1ᵀC1 term as a Schur block)."""
    A_x = plant.A - plant.B2 @ plant.C1
    g2 = plant.gamma ** -2
    top = A_x @ W + W @ A_x.T + g2 * plant.B1 @ plant.B1.T - _b2_term(plant, printed_b2)
    if literal:
        return top
    C1 = plant.C1
    off = W @ C1.T
    return np.block([[top, off], [off.T, -np.eye(C1.shape[0])]])


def y_side_lmi(plant: DgkfPlant, Z: np.ndarray, literal: bool = False) -> np.ndarray:
    """Z·DGKF_Y(Z⁻¹)·Z in LMI form (the constant B1B1ᵀ term as a Schur block)."""
    Ax = plant.a_cross
    g2 = plant.gamma ** -2
    top = Z @ Ax + Ax.T @ Z + g2 * plant.C1.T @ plant.C1 - plant.C2.T @ plant.C2
    if literal:
        return top
    B1 = plant.B1
    off = Z @ B1
    return np.block([[top, off], [off.T, -np.eye(B1.shape[1])]])


def dgkf_x(plant: DgkfPlant, X: np.ndarray, literal: bool = False,
           printed_b2: bool = False) -> np.ndarray:
    """The Riccati expression DGKF_X at X."""
    A_x = plant.A - plant.B2 @ plant.C1
    quad = plant.gamma ** -2 * plant.B1 @ plant.B1.T - _b2_term(plant, printed_b2)
    out = A_x.T @ X + X @ A_x + X @ quad @ X
    if not literal:
        out = out + plant.C1.T @ plant.C1
    return out


def dgkf_y(plant: DgkfPlant, Y: np.ndarray, literal: bool = False) -> np.ndarray:
    Ax = plant.a_cross
    quad = plant.gamma ** -2 * plant.C1.T @ plant.C1 - plant.C2.T @ plant.C2
    out = Ax @ Y + Y @ Ax.T + Y @ quad @ Y
    if not literal:
        out = out + plant.B1 @ plant.B1.T
    return out


def _affine(fn, n: int, basis: List[np.ndarray]) -> Tuple[np.ndarray, List[np.ndarray]]:
    """(F0, [F_k]) with −fn(Σ y_k E_k) = F0 + Σ y_k F_k for an affine fn."""
    base = fn(np.zeros((n, n)))
    return -base, [-(fn(e) - base) for e in basis]


def dgkf_check(plant: DgkfPlant, literal: bool = False, printed_b2: bool = False,
               tol: Optional[Tolerances] = None, cap: float = 1.0) -> DgkfResult:
    """Joint strict feasibility of the X-side, Y-side and coupling LMIs in (W, Z).

    Solved as max t with every block ⪰ tI (t ≤ cap); feasible iff t* exceeds the
    strictness margin.
    """
    tol = tol or Tolerances()
    n = plant.n
    basis = sym_basis(n)
    k = len(basis)
    zeros = [np.zeros_like(e) for e in basis]

    x_f0, x_fk = _affine(lambda W: x_side_lmi(plant, W, literal, printed_b2), n, basis)
    y_f0, y_fk = _affine(lambda Z: y_side_lmi(plant, Z, literal), n, basis)
    x_block = (x_f0, x_fk + [np.zeros_like(x_f0) for _ in basis])
    y_block = (y_f0, [np.zeros_like(y_f0) for _ in basis] + y_fk)
    eye = np.eye(n)
    coupling_f0 = np.block([[np.zeros((n, n)), eye], [eye, np.zeros((n, n))]])
    coupling_fk = ([np.block([[z, z], [z, e]]) for z, e in zip(zeros, basis)]
                   + [np.block([[e, z], [z, z]]) for z, e in zip(zeros, basis)])
    blocks = [x_block, y_block, (coupling_f0, coupling_fk)]

    solution = solve_margin(blocks, 2 * k, tol, cap)
    scale = 1.0 + max(float(np.abs(M).max(initial=0.0))
                      for M in (plant.A, plant.B1, plant.B2, plant.C1, plant.C2))
    threshold = tol.lmi_margin * scale
    feasible = solution.margin > threshold
    W = sym_from_params(solution.params[:k], n)
    Z = sym_from_params(solution.params[k:], n)
    coupling = np.block([[Z, eye], [eye, W]])
    coupling_min = float(np.linalg.eigvalsh(coupling)[0])
    logger.info(f'dgkf_check: gamma {plant.gamma:g}, margin {solution.margin:.3e}, '
                f'feasible={feasible}')
    diagnostics = {'status': solution.status, 'iterations': solution.iterations,
                   'literal': literal, 'printed_b2': printed_b2}
    if not feasible:
        return DgkfResult(False, solution.margin, plant.gamma, coupling_min_eig=coupling_min,
                          diagnostics=diagnostics)

    smallest = min(float(np.linalg.eigvalsh(W)[0]), float(np.linalg.eigvalsh(Z)[0]))
    near_singular = smallest < NEAR_SINGULAR
    if near_singular:
        logger.warning('dgkf_check: W or Z is nearly singular; strictness is not certified')
    certificate = LmiCertificate({'W': W, 'Z': Z}, {
        'x_side': float(np.linalg.eigvalsh(x_side_lmi(plant, W, literal, printed_b2))[-1]),
        'y_side': float(np.linalg.eigvalsh(y_side_lmi(plant, Z, literal))[-1]),
        'coupling': -coupling_min,
    })
    return DgkfResult(True, solution.margin, plant.gamma, W, Z, coupling_min, certificate,
                      near_singular, diagnostics)


def gamma_sweep(plant: DgkfPlant, gammas, **kwargs) -> List[DgkfResult]:
    return [dgkf_check(plant.with_gamma(g), **kwargs) for g in gammas]
