"""Tests for Schur complements, interconnections, dissipativity and DGKF feasibility."""

import math

import numpy as np
import pytest

from src.posopt.errors import DimensionError, InputError
from src.posopt.systems import (
    DgkfPlant,
    StateSpaceSystem,
    close_loop,
    dgkf_check,
    dgkf_x,
    dissipativity_check,
    gamma_sweep,
    hamiltonian_solution,
    hinf_closed_loop,
    is_reachable,
    riccati_map,
    schur_complement,
    simulate_storage,
    storage_blocks,
    storage_lmi,
    storage_matrix,
    x_side_lmi,
)


def _siso(a, b, c):
    return StateSpaceSystem([[a]], [[b]], [[c]])


def _plant(gamma):
    return DgkfPlant([[-1.0]], [[1.0]], [[1.0]], [[1.0]], [[1.0]], gamma)


def test_schur_complement_equivalence():
    """[[2, 1], [1, 1]] ⪰ 0 with complement 1."""
    result = schur_complement(np.array([[2.0, 1.0], [1.0, 1.0]]))
    np.testing.assert_allclose(result.complement, [[1.0]])
    assert result.matrix_psd
    assert result.gamma_pd
    assert result.equivalence_holds


def test_schur_complement_singular_block():
    """A singular lower-right block needs the pseudo-inverse opt-in."""
    M = np.array([[1.0, 0.0], [0.0, 0.0]])
    with pytest.raises(InputError):
        schur_complement(M)
    result = schur_complement(M, allow_pinv=True)
    assert result.pseudo_inverse
    np.testing.assert_allclose(result.complement, [[1.0]])


def test_schur_complement_validation():
    with pytest.raises(InputError):
        schur_complement(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(InputError):
        schur_complement(np.eye(3), split=3)


def test_state_space_validation():
    """Shapes are checked and D defaults to zero."""
    system = _siso(-1.0, 1.0, 1.0)
    assert system.D.shape == (1, 1)
    assert not system.has_feedthrough()
    assert is_reachable(system)
    with pytest.raises(DimensionError):
        StateSpaceSystem(np.eye(2), np.ones((3, 1)), np.ones((1, 2)))
    with pytest.raises(InputError):
        StateSpaceSystem.from_dict({'A': [[1.0]], 'B': [[1.0]]})


def test_feedback_interconnection():
    """Plant and controller (−1, 1, 1) close into [[−1, −1], [1, −1]]."""
    loop = close_loop(_siso(-1.0, 1.0, 1.0), _siso(-1.0, 1.0, 1.0))
    np.testing.assert_allclose(loop.A, [[-1.0, -1.0], [1.0, -1.0]])
    np.testing.assert_allclose(loop.B, [[1.0], [0.0]])
    np.testing.assert_allclose(loop.C, [[1.0, 0.0]])

    with_feedthrough = StateSpaceSystem([[-1.0]], [[1.0]], [[1.0]], [[0.5]])
    with pytest.raises(InputError):
        close_loop(with_feedthrough, _siso(-1.0, 1.0, 1.0))


def test_storage_blocks_match_closed_loop():
    """The term-by-term blocks assemble into 𝒜ᵀE + E𝒜 + EℬℬᵀE + 𝒞ᵀ𝒞."""
    plant = DgkfPlant([[0.5]], [[1.0]], [[1.0]], [[1.0]], [[1.0]], 1.0)
    controller = _siso(-1.0, 0.5, -2.0)
    E = np.array([[2.0, 0.3], [0.3, 1.0]])
    blocks = storage_blocks(plant, controller, E)
    assembled = np.block([[blocks['H_ss'], blocks['H_sz']], [blocks['H_zs'], blocks['H_zz']]])
    expected = storage_matrix(hinf_closed_loop(plant, controller), E)
    np.testing.assert_allclose(assembled, expected, atol=1e-12)

    with pytest.raises(InputError):
        storage_blocks(plant, controller, np.array([[1.0, 0.0], [1.0, 1.0]]))


def test_strictly_dissipative_system():
    """1/(s + 2) has gain 1/2 and admits a storage function with positive margin."""
    system = _siso(-2.0, 1.0, 1.0)
    result = dissipativity_check(system)
    assert result.dissipative
    assert result.margin > 0.0
    assert result.W is not None
    assert np.linalg.eigvalsh(storage_lmi(system, result.W))[-1] <= 1e-6
    assert result.verdicts_agree


def test_boundary_dissipative_system():
    """1/(s + 1) has gain exactly one; its Hamiltonian has eigenvalues on the imaginary axis."""
    result = dissipativity_check(_siso(-1.0, 1.0, 1.0))
    assert result.margin == pytest.approx(0.0, abs=1e-5)
    assert result.hamiltonian['status'] == 'imaginary_axis_eigenvalues'


def test_non_dissipative_system():
    """2/(s + 1) has gain two."""
    result = dissipativity_check(_siso(-1.0, 1.0, 2.0))
    assert not result.dissipative
    assert result.margin < 0.0
    assert result.W is None
    assert result.certificate is None


def _hinf_norm(A, B, C):
    """‖C(sI − A)⁻¹B‖∞ by bisection on imaginary-axis eigenvalues of the Hamiltonian."""
    def crosses(gamma):
        H = np.block([[A, B @ B.T / gamma ** 2], [-C.T @ C, -A.T]])
        return np.min(np.abs(np.linalg.eigvals(H).real)) <= 1e-9 * (1.0 + np.abs(H).max())

    lo, hi = 0.0, 1.0
    while crosses(hi):
        lo, hi = hi, 2.0 * hi
    for _ in range(60):
        mid = (lo + hi) / 2.0
        lo, hi = (mid, hi) if crosses(mid) else (lo, mid)
    return hi


def _random_stable_system(rng, gain):
    n = int(rng.integers(1, 7))
    m, p = int(rng.integers(1, 3)), int(rng.integers(1, 3))
    M = rng.standard_normal((n, n))
    A = M - (np.linalg.eigvals(M).real.max() + rng.uniform(0.5, 2.0)) * np.eye(n)
    B = rng.standard_normal((n, m))
    C = rng.standard_normal((p, n))
    C *= gain / _hinf_norm(A, B, C)
    return StateSpaceSystem(A, B, C)


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(100))
def test_random_lmi_and_riccati_verdicts_agree(seed):
    """Gains below one are dissipative with a stabilizing Riccati solution; above one neither."""
    rng = np.random.default_rng(seed)
    gain = rng.uniform(0.5, 0.85) if seed % 2 == 0 else rng.uniform(1.2, 2.0)
    system = _random_stable_system(rng, gain)

    result = dissipativity_check(system)
    assert result.dissipative == (gain < 1.0)
    assert result.verdicts_agree
    if gain < 1.0:
        assert result.hamiltonian['status'] == 'ok'
        assert result.hamiltonian['psd']
        assert np.linalg.eigvalsh(storage_lmi(system, result.W))[-1] <= 1e-6
    else:
        assert result.hamiltonian['status'] == 'imaginary_axis_eigenvalues'
        assert result.W is None


@pytest.mark.parametrize('W', [1.0 - 1e-8, 1.0, 1.0 + 1e-8])
def test_scalar_boundary_storage(W):
    """For 1/(s + 1) the storage W = 1 is the only one; nearby values miss by O(δ²)."""
    system = _siso(-1.0, 1.0, 1.0)
    storage = np.array([[W]])
    assert np.linalg.eigvalsh(storage_lmi(system, storage))[-1] <= 1e-12
    assert riccati_map(system, storage)[0, 0] == pytest.approx((W - 1.0) ** 2, abs=1e-15)


def test_hamiltonian_stabilizing_solution():
    """W^2 − 4W + 1 = 0 has stabilizing root 2 − √3."""
    out = hamiltonian_solution(_siso(-2.0, 1.0, 1.0))
    assert out['status'] == 'ok'
    assert out['W'][0][0] == pytest.approx(2.0 - math.sqrt(3.0), abs=1e-9)
    assert out['psd']


def test_simulated_storage_inequality():
    """Along a trajectory, storage plus output energy stays below the supply."""
    system = _siso(-2.0, 1.0, 1.0)
    W = dissipativity_check(system).W
    out = simulate_storage(system, W, lambda t: [math.sin(t)], dt=1e-3, T=5.0)
    assert out['steps'] == 5000
    assert out['slack'] >= -1e-2
    with pytest.raises(InputError):
        simulate_storage(system, W, lambda t: [0.0], dt=0.0)


def test_dgkf_feasible_for_large_gamma():
    """γ = 10 is achievable; the certificate passes every block."""
    result = dgkf_check(_plant(10.0))
    assert result.feasible
    assert result.margin > 0.0
    assert result.coupling_min_eig > 0.0
    assert np.linalg.eigvalsh(x_side_lmi(_plant(10.0), result.W))[-1] < 0.0


def test_dgkf_infeasible_for_small_gamma():
    result = dgkf_check(_plant(0.01))
    assert not result.feasible
    assert result.W is None


def test_gamma_sweep():
    results = gamma_sweep(_plant(1.0), [0.01, 10.0])
    assert [r.feasible for r in results] == [False, True]
    assert [r.gamma for r in results] == [0.01, 10.0]


def test_dgkf_feasibility_is_monotone_in_gamma():
    """Once a level is achievable every larger level is too."""
    gammas = list(np.logspace(-2.0, 1.0, 10))
    verdicts = [r.feasible for r in gamma_sweep(_plant(1.0), gammas)]
    assert verdicts == sorted(verdicts)
    assert not verdicts[0]
    assert verdicts[-1]


def test_riccati_and_lmi_forms_agree():
    """W·DGKF_X(W⁻¹)·W equals the Schur complement of the X-side LMI."""
    plant = _plant(2.0)
    W = np.array([[0.7]])
    lhs = W @ dgkf_x(plant, np.linalg.inv(W)) @ W
    lmi = x_side_lmi(plant, W)
    rhs = lmi[:1, :1] + lmi[:1, 1:] @ lmi[1:, :1]
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_plant_validation():
    with pytest.raises(InputError):
        _plant(0.0)
    with pytest.raises(InputError):
        DgkfPlant.from_dict({'A': [[1.0]]})
    assert DgkfPlant.from_dict(_plant(3.0).to_dict()).gamma == 3.0
