"""Dissipativity of state-space systems via quadratic storage functions.

The system is dissipative with storage V(x) = xᵀWx, W ⪰ 0, when

    [[WA + AᵀW + CᵀC,  WB + CᵀD],
     [BᵀW + DᵀC,       DᵀD − I ]]  ⪯ 0,

equivalently (for D = 0) the Riccati inequality WA + AᵀW + WBBᵀW + CᵀC ⪯ 0.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Union

import numpy as np
from scipy import linalg

from ..errors import DimensionError, InputError
from ..sdp import Tolerances
from .lmitools import solve_margin, sym_basis, sym_from_params
from .statespace import StateSpaceSystem, is_reachable

logger = logging.getLogger(__name__)

NEWTON_STEPS = 20


@dataclass
class LmiCertificate:
    """Storage W (or the DGKF pair W, Z) with the max eigenvalue of every certified block."""

    matrices: Dict[str, np.ndarray]
    block_max_eigs: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'matrices': {k: v.tolist() for k, v in self.matrices.items()},
            'block_max_eigs': dict(self.block_max_eigs),
        }


@dataclass
class DissipativityResult:
    dissipative: bool
    margin: float
    W: Optional[np.ndarray]
    riccati_residual: Optional[float]
    lmi_min_eig: Optional[float]
    riccati_solvable: Optional[bool]
    reachable: bool
    certificate: Optional[LmiCertificate] = None
    hamiltonian: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def verdicts_agree(self) -> bool:
        return self.riccati_solvable is None or self.riccati_solvable == self.dissipative

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dissipative': self.dissipative,
            'margin': self.margin,
            'W': None if self.W is None else self.W.tolist(),
            'riccati_residual': self.riccati_residual,
            'lmi_min_eig': self.lmi_min_eig,
            'riccati_solvable': self.riccati_solvable,
            'verdicts_agree': self.verdicts_agree,
            'reachable': self.reachable,
            'certificate': None if self.certificate is None else self.certificate.to_dict(),
            'hamiltonian': self.hamiltonian,
            'diagnostics': self.diagnostics,
        }


def storage_lmi(system: StateSpaceSystem, W: np.ndarray) -> np.ndarray:
    A, B, C, D = system.A, system.B, system.C, system.D
    top = W @ A + A.T @ W + C.T @ C
    off = W @ B + C.T @ D
    bottom = D.T @ D - np.eye(system.m)
    return np.block([[top, off], [off.T, bottom]])


def riccati_map(system: StateSpaceSystem, W: np.ndarray) -> np.ndarray:
    """Schur complement of the storage LMI; needs I − DᵀD ≻ 0."""
    A, B, C, D = system.A, system.B, system.C, system.D
    gain = np.eye(system.m) - D.T @ D
    off = W @ B + C.T @ D
    out = W @ A + A.T @ W + C.T @ C + off @ np.linalg.solve(gain, off.T)
    return (out + out.T) / 2.0


def _max_eig(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((M + M.T) / 2.0)[-1])


def riccati_newton(system: StateSpaceSystem, W0: np.ndarray,
                   steps: int = NEWTON_STEPS, tol: float = 1e-12) -> np.ndarray:
    """Newton iteration on WA + AᵀW + WBBᵀW + CᵀC = 0 (D = 0), keeping the best iterate."""
    A, B = system.A, system.B
    W = (W0 + W0.T) / 2.0
    best = W
    best_norm = float(np.linalg.norm(riccati_map(system, W)))
    for _ in range(steps):
        residual = riccati_map(system, W)
        if np.linalg.norm(residual) <= tol * system.scale():
            break
        closed = A + B @ B.T @ W
        try:
            delta = linalg.solve_continuous_lyapunov(closed.T, -residual)
        except (linalg.LinAlgError, ValueError):
            break
        if not np.all(np.isfinite(delta)):
            break
        W = W + (delta + delta.T) / 2.0
        norm = float(np.linalg.norm(riccati_map(system, W)))
        if norm < best_norm and np.linalg.eigvalsh(W)[0] >= -1e-9 * system.scale():
            best, best_norm = W, norm
        elif norm > 10.0 * best_norm:
            break
    return best


def hamiltonian_solution(system: StateSpaceSystem, tol: float = 1e-8) -> Dict[str, Any]:
    """Stabilizing Riccati solution from the stable subspace of [[A, BBᵀ], [−CᵀC, −Aᵀ]]."""
    A, B, C = system.A, system.B, system.C
    n = system.n
    H = np.block([[A, B @ B.T], [-C.T @ C, -A.T]])
    eigvals = np.linalg.eigvals(H)
    if np.min(np.abs(eigvals.real)) <= tol * system.scale():
        return {'status': 'imaginary_axis_eigenvalues'}
    _, vectors, sdim = linalg.schur(H, sort='lhp')
    if sdim != n:
        return {'status': 'no_stable_subspace'}
    U1, U2 = vectors[:n, :n], vectors[n:, :n]
    if np.linalg.cond(U1) > 1.0 / tol:
        return {'status': 'singular_basis'}
    W = U2 @ np.linalg.inv(U1)
    W = (W + W.T) / 2.0
    return {
        'status': 'ok',
        'W': W.tolist(),
        'residual': float(np.abs(riccati_map(system, W)).max()),
        'psd': bool(np.linalg.eigvalsh(W)[0] >= -1e-9 * system.scale()),
    }


def dissipativity_check(system: StateSpaceSystem, tol: Optional[Tolerances] = None,
                        cap: float = 1.0) -> DissipativityResult:
    """Search a storage function by maximizing the LMI margin.

    Dissipative iff the best margin t* (−storage LMI ⪰ tI, W ⪰ tI, t ≤ cap) is
    ≥ −tol. The LMI storage is then refined by Riccati Newton steps and compared
    with the Hamiltonian solution.
    """
    tol = tol or Tolerances()
    n, m = system.n, system.m
    scale = system.scale()
    basis = sym_basis(n)
    lmi_blocks = []
    zero_w = np.zeros((n, n))
    f0 = -storage_lmi(system, zero_w)
    fk = [-(storage_lmi(system, e) - storage_lmi(system, zero_w)) for e in basis]
    lmi_blocks.append((f0, fk))
    lmi_blocks.append((np.zeros((n, n)), basis))
    solution = solve_margin(lmi_blocks, len(basis), tol, cap)
    margin = solution.margin
    dissipative = margin >= -10.0 * tol.feas_tol * scale ** 2
    W = sym_from_params(solution.params, n)
    reachable = is_reachable(system)
    logger.info(f'dissipativity_check: margin {margin:.3e}, dissipative={dissipative}')

    diagnostics: Dict[str, Any] = {'status': solution.status, 'iterations': solution.iterations}
    riccati_residual = riccati_solvable = None
    hamiltonian: Dict[str, Any] = {}
    if not system.has_feedthrough():
        if dissipative:
            refined = riccati_newton(system, W)
            if _max_eig(riccati_map(system, refined)) < _max_eig(riccati_map(system, W)):
                diagnostics['newton_refined'] = True
                W = refined
        hamiltonian = hamiltonian_solution(system)
    if np.linalg.eigvalsh(np.eye(m) - system.D.T @ system.D)[0] > 0.0:
        riccati_residual = _max_eig(riccati_map(system, W))
        riccati_solvable = bool(riccati_residual <= tol.cert_tol * scale ** 2
                                and np.linalg.eigvalsh(W)[0] >= -tol.cert_tol * scale)
    lmi_min_eig = float(np.linalg.eigvalsh(-storage_lmi(system, W))[0])

    certificate = None
    if dissipative:
        certificate = LmiCertificate({'W': W}, {
            'storage_lmi': _max_eig(storage_lmi(system, W)),
            'negative_W': _max_eig(-W),
        })
    elif riccati_solvable:
        logger.warning('dissipativity_check: LMI and Riccati verdicts disagree')
    return DissipativityResult(dissipative, margin, W if dissipative else None, riccati_residual,
                               lmi_min_eig, riccati_solvable, reachable, certificate,
                               hamiltonian, diagnostics)


InputSignal = Union[np.ndarray, Callable[[float], Any]]


def simulate_storage(system: StateSpaceSystem, W: np.ndarray, u: InputSignal,
                     dt: float = 1e-3, T: float = 5.0,
                     x0: Optional[np.ndarray] = None) -> Dict[str, float]:
    """Forward-Euler check of V(x(T)) + ∫|y|² ≤ V(x(0)) + ∫|u|² with V(x) = xᵀWx.

    ``u`` is a callable t ↦ input or an array with one row per step.
    """
    if dt <= 0.0 or T <= 0.0:
        raise InputError('dt and T must be positive')
    W = np.asarray(W, dtype=float)
    if W.shape != (system.n, system.n):
        raise DimensionError(f'W must be {system.n}×{system.n}')
    steps = int(round(T / dt))
    x = np.zeros(system.n) if x0 is None else np.asarray(x0, dtype=float).copy()
    start = float(x @ W @ x)
    supply = output = 0.0
    for k in range(steps):
        if callable(u):
            uk = np.atleast_1d(np.asarray(u(k * dt), dtype=float))
        else:
            uk = np.atleast_1d(np.asarray(u[k], dtype=float))
        if uk.shape != (system.m,):
            raise DimensionError(f'Input must have {system.m} components')
        y = system.C @ x + system.D @ uk
        supply += dt * float(uk @ uk)
        output += dt * float(y @ y)
        x = x + dt * (system.A @ x + system.B @ uk)
    end = float(x @ W @ x)
    return {
        'storage_start': start,
        'storage_end': end,
        'supply': supply,
        'output_energy': output,
        'slack': start + supply - end - output,
        'steps': steps,
    }
