"""Interconnections: feedback loops and the H∞ closed loop with its storage inequality."""

from typing import Dict

import numpy as np

from ..errors import DimensionError, InputError
from .statespace import DgkfPlant, StateSpaceSystem


def close_loop(plant: StateSpaceSystem, controller: StateSpaceSystem) -> StateSpaceSystem:
    """Feedback w = y, e = u − v of plant (A, B, C) and controller (a, b, c).

    The result has state (x, ξ), A_cl = [[A, −Bc], [bC, a]], B_cl = [B; 0] and
    C_cl = [C, 0].
    """
    if plant.has_feedthrough() or controller.has_feedthrough():
        raise InputError('Interconnection requires strictly proper systems (D = 0)')
    if controller.p != plant.m:
        raise DimensionError(f'Controller has {controller.p} outputs, plant has {plant.m} inputs')
    if controller.m != plant.p:
        raise DimensionError(f'Controller has {controller.m} inputs, plant has {plant.p} outputs')
    A, B, C = plant.A, plant.B, plant.C
    a, b, c = controller.A, controller.B, controller.C
    A_cl = np.block([[A, -B @ c], [b @ C, a]])
    B_cl = np.vstack([B, np.zeros((controller.n, plant.m))])
    C_cl = np.hstack([C, np.zeros((plant.p, controller.n))])
    return StateSpaceSystem(A_cl, B_cl, C_cl)


def hinf_closed_loop(plant: DgkfPlant, controller: StateSpaceSystem) -> StateSpaceSystem:
    """𝒜 = [[A, B2 c], [b C2, a]], ℬ = [B1; b], 𝒞 = [C1, c] with D12 = D21 = I, D11 = 0."""
    a, b, c = controller.A, controller.B, controller.C
    if c.shape[0] != plant.B2.shape[1]:
        raise DimensionError('Controller output must match the control input of B2')
    if b.shape[1] != plant.C2.shape[0]:
        raise DimensionError('Controller input must match the measurement C2')
    A_cl = np.block([[plant.A, plant.B2 @ c], [b @ plant.C2, a]])
    B_cl = np.vstack([plant.B1, b])
    C_cl = np.hstack([plant.C1, c])
    return StateSpaceSystem(A_cl, B_cl, C_cl)


def storage_matrix(system: StateSpaceSystem, E: np.ndarray) -> np.ndarray:
    """H = 𝒜ᵀE + E𝒜 + EℬℬᵀE + 𝒞ᵀ𝒞."""
    A, B, C = system.A, system.B, system.C
    return A.T @ E + E @ A + E @ B @ B.T @ E + C.T @ C


def storage_blocks(plant: DgkfPlant, controller: StateSpaceSystem,
                   E: np.ndarray) -> Dict[str, np.ndarray]:
    """The blocks of H for E = [[E11, E12], [E12ᵀ, E22]], written out term by term."""
    n = plant.n
    E = np.asarray(E, dtype=float)
    if E.shape != (n + controller.n, n + controller.n):
        raise DimensionError(f'E must be {(n + controller.n,) * 2}, got {E.shape}')
    if np.abs(E - E.T).max() > 1e-12 * max(1.0, float(np.abs(E).max())):
        raise InputError('E must be symmetric')
    A, B1, B2, C1, C2 = plant.A, plant.B1, plant.B2, plant.C1, plant.C2
    a, b, c = controller.A, controller.B, controller.C
    E11, E12, E22 = E[:n, :n], E[:n, n:], E[n:, n:]
    E21 = E12.T
    H_ss = (E11 @ A + A.T @ E11 + C1.T @ C1 + E12 @ b @ C2 + C2.T @ b.T @ E21
            + E11 @ B1 @ b.T @ E21 + E11 @ B1 @ B1.T @ E11 + E12 @ b @ b.T @ E21
            + E12 @ b @ B1.T @ E11)
    H_sz = (A.T @ E12 + C1.T @ c + E12 @ a + E11 @ B2 @ c + C2.T @ b.T @ E22
            + E11 @ B1 @ b.T @ E22 + E11 @ B1 @ B1.T @ E12 + E12 @ b @ b.T @ E22
            + E12 @ b @ B1.T @ E12)
    H_zz = (E22 @ a + a.T @ E22 + c.T @ c + E21 @ B2 @ c + c.T @ B2.T @ E12
            + E21 @ B1 @ b.T @ E22 + E21 @ B1 @ B1.T @ E12 + E22 @ b @ b.T @ E22
            + E22 @ b @ B1.T @ E12)
    return {'H_ss': H_ss, 'H_sz': H_sz, 'H_zs': H_sz.T, 'H_zz': H_zz}
