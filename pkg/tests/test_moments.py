"""Tests for moment sequences, Hankel/Toeplitz checks and the Jacobi recurrence."""

import numpy as np
import pytest

from src.posopt.errors import InputError
from src.posopt.moments import (
    MULTIVARIATE,
    SCALED,
    MomentSequence,
    gauss_quadrature,
    hamburger_check,
    hankel_rank,
    jacobi_params,
    load_moments,
    localizing_matrix,
    moment_matrix,
    parse_moments,
    trig_moment_check,
)
from src.posopt.poly import parse_poly


GAUSSIAN = [1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0]


def test_gaussian_moments_are_hamburger_feasible():
    """Standard normal moments pass the Hankel test at every order."""
    c = MomentSequence.real(GAUSSIAN)
    assert c.max_order == 4
    check = hamburger_check(c)
    assert check.feasible
    assert check.order == 4
    assert check.min_eig > 0.0


def test_indefinite_hankel_is_infeasible():
    """c_2 < 0 cannot come from a measure."""
    check = hamburger_check(MomentSequence.real([1.0, 0.0, -1.0]))
    assert not check.feasible
    assert check.min_eig < 0.0


def test_psd_criteria_near_the_boundary():
    """λ_min ≥ −tol·‖H‖ is the default; diagonal scaling is the stricter opt-in test."""
    # det H = −2e-10, so λ_min ≈ −2e-14 against ‖H‖ = 1e4
    c = MomentSequence.real([1e-8, 0.01000001, 1e4])
    check = hamburger_check(c)
    assert check.criterion == 'norm'
    assert check.feasible
    assert check.min_eig >= -1e-9 * np.linalg.norm(moment_matrix(c, 1).matrix, 2)

    scaled = hamburger_check(c, criterion=SCALED)
    assert scaled.criterion == SCALED
    assert not scaled.feasible
    assert scaled.to_dict()['criterion'] == 'scaled'

    with pytest.raises(InputError):
        hamburger_check(c, criterion='spectral')


def test_stieltjes_needs_support_on_half_line():
    """A point mass at −1 is Hamburger but not Stieltjes feasible."""
    c = MomentSequence.from_atoms([-1.0], [1.0], 5)
    assert hamburger_check(c).feasible
    stieltjes = hamburger_check(c, stieltjes=True)
    assert not stieltjes.feasible
    assert stieltjes.shifted_min_eig < 0.0

    positive = MomentSequence.from_atoms([0.5, 2.0], [1.0, 1.0], 7)
    assert hamburger_check(positive, stieltjes=True).feasible


def test_rank_counts_atoms():
    """Two atoms give a rank-two Hankel matrix."""
    c = MomentSequence.from_atoms([-1.0, 1.0], [0.5, 0.5], 5)
    assert hankel_rank(c) == 2


def test_jacobi_recurrence_of_gaussian():
    """Hermite recurrence: α_k = 0 and β_k = k, with β_0 = c_0."""
    params = jacobi_params(MomentSequence.real(GAUSSIAN))
    assert params.length == 4
    np.testing.assert_allclose(params.alphas, 0.0, atol=1e-10)
    np.testing.assert_allclose(params.betas, [1.0, 1.0, 2.0, 3.0], rtol=1e-10)


def test_jacobi_stops_at_finite_support():
    """The recurrence halts after as many steps as there are atoms."""
    c = MomentSequence.from_atoms([-1.0, 1.0], [0.5, 0.5], 6)
    params = jacobi_params(c)
    assert params.length == 2
    nodes, weights = gauss_quadrature(params)
    np.testing.assert_allclose(np.sort(nodes), [-1.0, 1.0], atol=1e-10)
    np.testing.assert_allclose(weights, [0.5, 0.5], atol=1e-10)


def test_jacobi_respects_max_k():
    """max_k caps the number of steps."""
    assert jacobi_params(MomentSequence.real(GAUSSIAN), max_k=2).length == 2


def test_trigonometric_moments():
    """A point mass on the circle passes; |c_1| > c_0 fails."""
    assert trig_moment_check(MomentSequence.circle([1.0, 1.0, 1.0])).feasible
    assert not trig_moment_check(MomentSequence.circle([1.0, 2.0])).feasible
    with pytest.raises(InputError):
        trig_moment_check(MomentSequence.real([1.0, 0.0, 1.0]))


def test_two_sided_circle_moments_need_symmetry():
    """c_{−k} must be the conjugate of c_k."""
    c = MomentSequence.circle_two_sided([0.5 - 0.5j, 1.0, 0.5 + 0.5j])
    assert c.value(-1) == pytest.approx(0.5 - 0.5j)
    with pytest.raises(InputError):
        MomentSequence.circle_two_sided([0.5, 1.0, 0.2])


def test_multivariate_moment_matrix_from_points():
    """y_{α+β} over the graded-lex basis matches Σ w v vᵀ."""
    points = np.array([[1.0, 2.0], [-1.0, 0.5]])
    weights = [0.25, 0.75]
    m = MomentSequence.from_points(points, weights, 2)
    assert m.kind == MULTIVARIATE
    hankel = moment_matrix(m, 1)
    assert [b.exponents for b in hankel.basis] == [(0, 0), (0, 1), (1, 0)]
    expected = sum(w * np.outer(v, v) for w, v in
                   zip(weights, ([1.0, 2.0, 1.0], [1.0, 0.5, -1.0])))
    np.testing.assert_allclose(hankel.matrix, expected)


def test_localizing_matrix_is_psd_inside_support():
    """A mass at 0.5 satisfies 1 − x^2 ≥ 0."""
    c = MomentSequence.from_atoms([0.5], [1.0], 5)
    loc = localizing_matrix(c, parse_poly('1 - x1^2', 1), 1)
    np.testing.assert_allclose(loc.matrix, 0.75 * np.array([[1.0, 0.5], [0.5, 0.25]]))


def test_moment_matrix_needs_enough_data():
    with pytest.raises(InputError):
        moment_matrix(MomentSequence.real([1.0, 0.0]), 1)


def test_parse_and_load_moments(tmp_path):
    """JSON arrays, keyed objects and CSV files all load."""
    real = parse_moments([1, 0, 1])
    assert real.values.tolist() == [1.0, 0.0, 1.0]

    multi = parse_moments({'0,0': 1.0, '1,0': 0.5, '0,1': 0.0})
    assert multi.num_vars == 2
    assert multi.value((1, 0)) == 0.5

    with pytest.raises(InputError):
        parse_moments('not moments')

    csv = tmp_path / 'moments.csv'
    csv.write_text('1\n0\n1\n0\n3\n')
    loaded = load_moments(csv)
    assert hamburger_check(loaded).feasible

    data = tmp_path / 'moments.json'
    data.write_text('{"kind": "circle", "values": [1, [0.5, 0]]}')
    assert load_moments(data).kind == 'circle'
