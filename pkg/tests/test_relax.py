"""Tests for the moment / SOS relaxation hierarchy and SOS programs."""

import math

import numpy as np
import pytest

from src.posopt.errors import InputError
from src.posopt.poly import parse_poly
from src.posopt.relax import (
    NUMERICAL,
    OPTIMAL,
    PREORDER,
    SADDLE_TOL,
    AffineFamily,
    AffinePoly,
    RelaxationProblem,
    bisect_bound,
    certify_saddle,
    cube_bound,
    lyapunov_search,
    minimize_constrained,
    minimize_global,
    saddle_scale,
    sos_program,
)


def test_global_minimum_of_shifted_square():
    """(x − 1)^2 + 2 has minimum 2 at x = 1, read off a rank-one moment matrix."""
    result = minimize_global(parse_poly('(x1 - 1)^2 + 2', 1))
    assert result.status == OPTIMAL
    assert result.lower_bound == pytest.approx(2.0, abs=1e-6)
    assert result.moment_rank == 1
    np.testing.assert_allclose(result.minimizer_candidate, [1.0], atol=1e-4)
    assert result.certificate_residual <= 1e-6


def test_global_minimum_with_several_minimizers():
    """x^4 + y^4 − x^2 − y^2 has minimum −1/2 attained at four points."""
    result = minimize_global(parse_poly('x1^4 + x2^4 - x1^2 - x2^2', 2))
    assert result.lower_bound == pytest.approx(-0.5, abs=1e-6)
    assert result.moment_rank > 1
    assert result.minimizer_candidate is None


def test_linear_objective_on_disk():
    """min x1 + x2 on the unit disk is −√2."""
    problem = RelaxationProblem(parse_poly('x1 + x2', 2), [parse_poly('1 - x1^2 - x2^2', 2)], 1)
    result = minimize_constrained(problem)
    assert result.lower_bound == pytest.approx(-math.sqrt(2.0), abs=1e-6)
    np.testing.assert_allclose(result.minimizer_candidate, [-1 / math.sqrt(2)] * 2, atol=1e-4)
    assert result.lagrange[0] == pytest.approx(1 / math.sqrt(2), abs=1e-4)


SADDLE_CASES = [
    ('(x1 - 1)^2 + 2', [], 1, 2.0),
    ('x1^4 + x2^4 - x1^2 - x2^2', [], 2, -0.5),
    ('x1 + x2', ['1 - x1^2 - x2^2'], 1, -math.sqrt(2.0)),
    ('x1 + x2', ['1 - x1^2 - x2^2'], 2, -math.sqrt(2.0)),
]


@pytest.mark.parametrize('objective,constraints,order,expected', SADDLE_CASES)
def test_saddle_residuals_are_small(objective, constraints, order, expected):
    """Optimal moments and Gram blocks are complementary to 1e-5 of the problem scale."""
    problem = RelaxationProblem(parse_poly(objective, 2),
                                [parse_poly(p, 2) for p in constraints], order)
    result = minimize_constrained(problem)
    assert result.status == OPTIMAL
    assert result.lower_bound == pytest.approx(expected, abs=1e-5)

    residuals = certify_saddle(result)
    bound = SADDLE_TOL * saddle_scale(result)
    assert residuals['complementarity_residual'] <= bound
    assert residuals['balanced_residual'] <= bound
    assert result.diagnostics['complementarity_residual'] == pytest.approx(
        residuals['complementarity_residual'])


def test_unmet_complementarity_is_not_optimal(monkeypatch):
    """When re-solving cannot close the complementarity gap the status is numerical."""
    def stuck(result):
        return {'complementarity_residual': 1.0, 'balanced_residual': 0.0}

    monkeypatch.setattr('src.posopt.relax.hierarchy.certify_saddle', stuck)
    result = minimize_global(parse_poly('(x1 - 1)^2 + 2', 1))
    assert result.status == NUMERICAL
    assert result.diagnostics['refinements'] == 2
    assert result.lower_bound == pytest.approx(2.0, abs=1e-6)


def test_preorder_mode_uses_products():
    """Preorder certificates pair a multiplier with every product of constraints."""
    problem = RelaxationProblem(
        parse_poly('x1 + x2', 2),
        [parse_poly('x1', 2), parse_poly('x2', 2)],
        1,
        mode=PREORDER,
    )
    result = minimize_constrained(problem)
    assert len(result.products) == 4
    assert result.lower_bound == pytest.approx(0.0, abs=1e-5)


def test_cube_bound():
    """x1 over [−1, 1] has minimum −1."""
    assert cube_bound(parse_poly('x1', 1)).lower_bound == pytest.approx(-1.0, abs=1e-6)


def test_problem_validation_and_parsing():
    """Order must cover the degrees; dict input infers variables and order."""
    with pytest.raises(InputError):
        RelaxationProblem(parse_poly('x1^4', 1), [], 1)
    with pytest.raises(InputError):
        RelaxationProblem(parse_poly('x1^2', 1), [], 1, mode='cone')

    problem = RelaxationProblem.from_dict({'objective': 'x1 + x2', 'constraints': ['1 - x1^2']})
    assert problem.num_vars == 2
    assert problem.order == 1
    assert problem.to_dict()['constraints'] == ['-x1^2 + 1']


@pytest.mark.slow
def test_bisection_matches_relaxation():
    """Bisection over f − λ SOS finds the same bound as the SDP."""
    out = bisect_bound(parse_poly('(x1 - 1)^2 + 2', 1), 0.0, 5.0, precision=1e-4)
    assert out['bound'] == pytest.approx(2.0, abs=2e-4)
    assert out['steps'] > 0


def test_sos_program_finds_parameter():
    """x^2 + c·x + 1 is SOS for |c| ≤ 2; the program finds such a c."""
    g = 1
    member = AffinePoly(parse_poly('x1^2 + 1', g), [parse_poly('x1', g)])
    result = sos_program(AffineFamily(1, [member]))
    assert result.feasible
    assert abs(result.c[0]) <= 2.0 + 1e-6
    assert result.certificates[0].residual <= 1e-6


def test_lyapunov_for_stable_linear_field():
    """A stable linear field admits a quadratic Lyapunov function."""
    field = [parse_poly('-x1 + x2', 2), parse_poly('-x1 - x2', 2)]
    result = lyapunov_search(field)
    assert result.feasible
    assert result.V([1.0, 0.5]) > 0.0
    assert result.V([0.0, 0.0]) == pytest.approx(0.0)


def test_lyapunov_for_unstable_field():
    """dx/dt = x has no Lyapunov function."""
    result = lyapunov_search([parse_poly('x1', 1)])
    assert not result.feasible
    assert result.V is None
    with pytest.raises(InputError):
        lyapunov_search([parse_poly('x1', 1)], degree=3)
