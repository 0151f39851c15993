"""Tests for the dense SDP core."""

import numpy as np
import pytest

from src.posopt.config.settings import TestingConfig
from src.posopt.errors import InfeasibleError
from src.posopt.poly import Poly, graded_lex_monomials
from src.posopt.sdp import (
    DUAL_INFEASIBLE,
    INDEFINITE,
    OPTIMAL,
    PD,
    PRIMAL_INFEASIBLE,
    PSD,
    SdpProblem,
    Tolerances,
    dual_ray_violation,
    is_psd,
    lmi_problem,
    max_entropy,
    numerical_rank,
    primal_ray_violation,
    psd_factor,
    read_sdpa,
    solve_sdp,
    span_residual,
    write_sdpa,
)
from src.posopt.sos import build_gram_system


def _unit(n, i, j):
    e = np.zeros((n, n))
    e[i, j] = e[j, i] = 1.0
    return e


def test_min_trace_with_fixed_entry():
    """min tr X s.t. X11 = 1 has value 1."""
    problem = SdpProblem((2,), [np.eye(2)], [[_unit(2, 0, 0)]], [1.0])
    solution = solve_sdp(problem)
    assert solution.status == OPTIMAL
    assert solution.primal_objective == pytest.approx(1.0, abs=1e-6)
    assert solution.dual_objective == pytest.approx(1.0, abs=1e-6)
    np.testing.assert_allclose(solution.x_blocks[0], [[1.0, 0.0], [0.0, 0.0]], atol=1e-5)


def test_smallest_eigenvalue_program():
    """min ⟨C, X⟩ s.t. tr X = 1 gives λ_min(C)."""
    C = np.array([[2.0, 1.0], [1.0, 2.0]])
    problem = SdpProblem((2,), [C], [[np.eye(2)]], [1.0])
    solution = solve_sdp(problem)
    assert solution.status == OPTIMAL
    assert solution.primal_objective == pytest.approx(1.0, abs=1e-6)
    assert solution.gap <= 1e-6


def test_primal_infeasible_certificate():
    """X ⪰ 0 with X = −1 is certified infeasible by a ray y."""
    problem = SdpProblem((1,), [np.zeros((1, 1))], [[np.ones((1, 1))]], [-1.0])
    solution = solve_sdp(problem)
    assert solution.status == PRIMAL_INFEASIBLE
    assert solution.certificate['kind'] == PRIMAL_INFEASIBLE
    assert primal_ray_violation(problem, np.asarray(solution.certificate['y'])) <= 1e-6


def test_dual_infeasible_certificate():
    """min −X22 s.t. X11 = 1 is unbounded below."""
    C = np.array([[0.0, 0.0], [0.0, -1.0]])
    problem = SdpProblem((2,), [C], [[_unit(2, 0, 0)]], [1.0])
    solution = solve_sdp(problem)
    assert solution.status == DUAL_INFEASIBLE
    cert = solution.certificate
    x_ray = [np.asarray(x) for x in cert['x_blocks']]
    assert dual_ray_violation(problem, x_ray, np.asarray(cert['free'])) <= 1e-6


def test_free_variables():
    """X + u = 2 and X = 2 force the free variable u to 0."""
    problem = SdpProblem(
        (1,), [np.ones((1, 1))], [np.ones((2, 1, 1))], [2.0, 2.0],
        free_c=np.array([1.0]), free_a=np.array([[1.0], [0.0]]),
    )
    solution = solve_sdp(problem)
    assert solution.status == OPTIMAL
    assert solution.free[0] == pytest.approx(0.0, abs=1e-6)
    assert solution.primal_objective == pytest.approx(2.0, abs=1e-6)


def test_lmi_problem_maximizes_off_diagonal():
    """[[1, y], [y, 1]] ⪰ 0 allows y up to 1."""
    problem = lmi_problem([(np.eye(2), [_unit(2, 0, 1)])], objective=[1.0])
    solution = solve_sdp(problem)
    assert solution.status == OPTIMAL
    assert solution.y[0] == pytest.approx(1.0, abs=1e-5)


def _complementary_instance(rng):
    """Blocks with X*, S* ⪰ 0, X*S* = 0 and a known optimal value bᵀy*."""
    sizes = tuple(int(n) for n in rng.integers(2, 7, size=int(rng.integers(1, 3))))
    m = int(rng.integers(1, min(8, sum(n * (n + 1) // 2 for n in sizes)) + 1))
    y_star = rng.standard_normal(m)
    c_blocks, a_blocks, x_star = [], [], []
    for n in sizes:
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        rank = int(rng.integers(1, n))
        x_diag = np.concatenate([rng.uniform(0.5, 2.0, rank), np.zeros(n - rank)])
        s_diag = np.concatenate([np.zeros(rank), rng.uniform(0.5, 2.0, n - rank)])
        g = rng.standard_normal((m, n, n))
        a = g + g.transpose(0, 2, 1)
        x_star.append(q @ np.diag(x_diag) @ q.T)
        c_blocks.append(q @ np.diag(s_diag) @ q.T + np.einsum('k,kij->ij', y_star, a))
        a_blocks.append(a)
    b = sum(np.einsum('kij,ij->k', a, x) for a, x in zip(a_blocks, x_star))
    return SdpProblem(sizes, c_blocks, a_blocks, b), float(b @ y_star)


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(50))
def test_random_solvable_sdps(seed):
    """Programs with a planted complementary optimum recover its value to 1e-6 relative."""
    problem, value = _complementary_instance(np.random.default_rng(seed))
    solution = solve_sdp(problem)
    assert solution.status == OPTIMAL
    scale = 1.0 + abs(value)
    assert abs(solution.primal_objective - value) <= 1e-6 * scale
    assert abs(solution.dual_objective - value) <= 1e-6 * scale
    # weak duality at the returned iterate
    assert solution.primal_objective >= solution.dual_objective - 1e-6 * scale


@pytest.mark.parametrize('seed', range(10))
def test_random_primal_infeasible_sdps(seed):
    """A planted y with Σ y_i A_i ≺ 0 and bᵀy = 1 is recovered as a verified ray."""
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(3, 6)), int(rng.integers(2, 5))
    g = rng.standard_normal((m, n, n))
    a = g + g.transpose(0, 2, 1)
    y = rng.standard_normal(m)
    y[-1] = 1.0
    p = rng.standard_normal((n, n))
    a[-1] = -(p @ p.T + np.eye(n)) - np.einsum('k,kij->ij', y[:-1], a[:-1])
    b = rng.standard_normal(m)
    b[-1] = 1.0 - b[:-1] @ y[:-1]
    c = rng.standard_normal((n, n))
    problem = SdpProblem((n,), [c + c.T], [a], b)

    solution = solve_sdp(problem)
    assert solution.status == PRIMAL_INFEASIBLE
    assert primal_ray_violation(problem, np.asarray(solution.certificate['y'])) <= 1e-6


@pytest.mark.parametrize('seed', range(10))
def test_random_dual_infeasible_sdps(seed):
    """A feasible program with a planted ray vvᵀ, A(vvᵀ) = 0, ⟨C, vvᵀ⟩ < 0 is unbounded."""
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(3, 6)), int(rng.integers(1, 4))
    v = rng.standard_normal(n)
    ray = np.outer(v, v)
    g = rng.standard_normal((m, n, n))
    a = g + g.transpose(0, 2, 1)
    a -= np.einsum('kij,ij->k', a, ray)[:, None, None] * ray / (v @ v) ** 2
    s = rng.standard_normal((n, n))
    s = s @ s.T
    c = s - (v @ s @ v / (v @ v) ** 2 + 1.0) * ray
    x0 = rng.standard_normal((n, n))
    b = np.einsum('kij,ij->k', a, x0 @ x0.T + np.eye(n))
    problem = SdpProblem((n,), [c], [a], b)

    solution = solve_sdp(problem)
    assert solution.status == DUAL_INFEASIBLE
    cert = solution.certificate
    x_ray = [np.asarray(x) for x in cert['x_blocks']]
    assert dual_ray_violation(problem, x_ray, np.asarray(cert['free'])) <= 1e-6


def test_sdpa_round_trip():
    """Writing then reading SDPA keeps the data."""
    C = np.array([[2.0, 1.0], [1.0, 2.0]])
    problem = SdpProblem((2, 1), [C, np.ones((1, 1))],
                         [[np.eye(2)], [np.ones((1, 1))]], [1.0])
    back = read_sdpa(write_sdpa(problem))
    assert back.block_sizes == (2, 1)
    np.testing.assert_allclose(back.b, problem.b)
    for ours, theirs in zip(problem.c_blocks, back.c_blocks):
        np.testing.assert_allclose(ours, theirs)
    for ours, theirs in zip(problem.a_blocks, back.a_blocks):
        np.testing.assert_allclose(ours, theirs)


def test_psd_factor_verdicts():
    """LDLᵀ classification and a negative direction for indefinite input."""
    assert psd_factor(np.eye(3)).verdict == PD

    rank_one = psd_factor(np.ones((2, 2)))
    assert rank_one.verdict == PSD
    assert rank_one.rank == 1
    root = rank_one.square_root()
    np.testing.assert_allclose(root @ root.T, np.ones((2, 2)), atol=1e-12)

    M = np.array([[1.0, 2.0], [2.0, 1.0]])
    indefinite = psd_factor(M)
    assert indefinite.verdict == INDEFINITE
    v = indefinite.negative_direction
    assert v @ M @ v < 0


def test_eigenvalue_helpers():
    """is_psd uses a relative slack and numerical_rank a relative cut-off."""
    assert is_psd(np.diag([1.0, -1e-12]))
    assert not is_psd(np.diag([1.0, -1e-3]))
    assert numerical_rank(np.diag([1.0, 1e-9, 0.0])) == 1


def test_max_entropy_fixed_diagonal():
    """Maximum log det with unit diagonal is the identity; Ω⁻¹ lies in span{A_i}."""
    a_mats = [_unit(2, 0, 0), _unit(2, 1, 1)]
    solution = max_entropy(a_mats, [1.0, 1.0])
    np.testing.assert_allclose(solution.omega, np.eye(2), atol=1e-6)
    assert solution.logdet == pytest.approx(0.0, abs=1e-6)
    assert span_residual(np.linalg.inv(solution.omega), a_mats) <= 1e-6


@pytest.mark.parametrize('seed', range(20))
def test_max_entropy_on_random_gram_systems(seed):
    """For f = V Ω₀ Vᵀ with Ω₀ ≻ 0 the optimum satisfies the data and Ω⁻¹ ∈ span{B_α}."""
    rng = np.random.default_rng(seed)
    num_vars, half = int(rng.integers(1, 3)), int(rng.integers(1, 4))
    basis = graded_lex_monomials(num_vars, half)
    g = rng.standard_normal((len(basis), len(basis)))
    omega0 = g @ g.T + 0.5 * np.eye(len(basis))
    terms = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            terms[u * v] = terms.get(u * v, 0.0) + float(omega0[i, j])
    system = build_gram_system(Poly(num_vars, terms), basis=basis)
    a_mats = system.constraint_stack()

    solution = max_entropy(a_mats, system.rhs())
    applied = np.einsum('kij,ij->k', a_mats, solution.omega)
    scale = 1.0 + np.abs(system.rhs()).max()
    np.testing.assert_allclose(applied, system.rhs(), atol=1e-7 * scale)
    assert solution.logdet >= np.linalg.slogdet(omega0)[1] - 1e-8
    assert span_residual(np.linalg.inv(solution.omega), a_mats) <= 1e-6


@pytest.mark.parametrize('seed', range(10))
def test_max_entropy_toeplitz_completion(seed):
    """Fixing the first bands of a Toeplitz matrix leaves an inverse with the same band."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    bands = int(rng.integers(1, n - 1))
    g = rng.standard_normal((n, n))
    omega0 = g @ g.T + np.eye(n)
    a_mats = [np.eye(n, k=k) + np.eye(n, k=-k) for k in range(bands + 1)]
    b = [float(np.sum(a * omega0)) for a in a_mats]

    solution = max_entropy(a_mats, b)
    inverse = np.linalg.inv(solution.omega)
    assert span_residual(inverse, a_mats) <= 1e-6
    assert np.abs(np.triu(inverse, bands + 1)).max() <= 1e-6 * np.abs(inverse).max()


def test_max_entropy_infeasible():
    """A negative diagonal entry has no positive definite completion."""
    with pytest.raises(InfeasibleError):
        max_entropy([_unit(2, 0, 0), _unit(2, 1, 1)], [1.0, -1.0])


def test_tolerances_from_config():
    """Tolerances read both config classes and Flask-style mappings."""
    from_class = Tolerances.from_config(TestingConfig)
    assert from_class.seed == 1234
    from_mapping = Tolerances.from_config({'POSOPT_FEAS_TOL': 1e-6, 'POSOPT_SEED': 9})
    assert from_mapping.feas_tol == 1e-6
    assert from_mapping.seed == 9
    assert from_mapping.gap_tol == Tolerances().gap_tol
