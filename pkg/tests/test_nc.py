"""Tests for the free *-algebra: parsing, evaluation, derivatives, SOS, convexity, LMIs, ideals."""

import numpy as np
import pytest

from src.posopt.errors import DimensionError, InputError, ParseError
from src.posopt.nc import (
    CONVEX,
    DEGREE_THEOREM,
    FREE_STAR,
    MIDDLE_MATRIX_PSD,
    NOT_CONVEX,
    MatrixTuple,
    NcPoly,
    build_lmi,
    canonical_rotation,
    convexity_test,
    cyclic_reduce,
    cyclically_equivalent,
    hessian,
    infer_nc_mode,
    left_ideal_member,
    middle_matrix,
    midpoint_defect,
    nc_derivative,
    nc_eval,
    nc_parse,
    nc_sos_check,
    quotient_action,
    quotient_basis,
    word_count,
)


def test_juxtaposition_and_star_multiply_alike():
    """x2 x1 x2 and x2*x1*x2 are the same word."""
    assert nc_parse('x2 x1 x2', 2) == nc_parse('x2*x1*x2', 2)
    assert nc_parse('(x1 + x2)^2', 2) == nc_parse('x1^2 + x1 x2 + x2 x1 + x2^2', 2)


def test_involution_only_in_free_star_mode():
    """The ' suffix reverses words and stars letters."""
    p = nc_parse("(x1 x2')'", 2, FREE_STAR)
    assert p == nc_parse("x2 x1'", 2, FREE_STAR)
    assert infer_nc_mode("x1' x1") == FREE_STAR
    with pytest.raises(ParseError):
        nc_parse("x1'", 1)


def test_symmetry():
    """x1 x2 is not symmetric; x1 x2 + x2 x1 is."""
    assert not nc_parse('x1 x2', 2).is_symmetric()
    assert nc_parse('x1 x2 + x2 x1', 2).is_symmetric()
    assert nc_parse('x1 x2', 2).star() == nc_parse('x2 x1', 2)


def test_evaluation_on_matrices():
    """Letters map to the tuple entries, products in word order."""
    X = MatrixTuple.of([np.diag([1.0, 2.0]), np.array([[0.0, 1.0], [1.0, 0.0]])])
    value = nc_eval(nc_parse('x1 x2 + x2 x1', 2), X)
    np.testing.assert_allclose(value, [[0.0, 3.0], [3.0, 0.0]])
    with pytest.raises(DimensionError):
        nc_eval(nc_parse('x1 x2 x3', 3), X)


def test_matrix_tuple_validation():
    """Symmetric mode rejects non-symmetric entries; sizes must match."""
    with pytest.raises(InputError):
        MatrixTuple.of([np.array([[0.0, 1.0], [0.0, 0.0]])])
    with pytest.raises(DimensionError):
        MatrixTuple.of([np.eye(2), np.eye(3)])
    X = MatrixTuple.of([np.eye(2)])
    assert MatrixTuple.from_dict(X.to_dict()).size == 2


def test_directional_derivatives():
    """d/dt (x + th)^2 at 0 is xh + hx; the third derivative of x^3 is 6h^3."""
    x2 = nc_parse('x1^2', 1)
    first = nc_derivative(x2, 1)
    assert first == NcPoly(2, {(0, 2): 1.0, (2, 0): 1.0})
    assert first.render() == 'h x1 + x1 h'
    assert nc_derivative(nc_parse('x1^3', 1), 3) == NcPoly(2, {(2, 2, 2): 6.0})
    assert hessian(x2) == NcPoly(2, {(2, 2): 2.0})
    with pytest.raises(InputError):
        nc_derivative(x2, 0)


def test_cyclic_reduction():
    """x1 x2 x1 rotates to x1 x1 x2."""
    assert canonical_rotation((0, 2, 0)) == (0, 0, 2)
    p = nc_parse('x1 x2 x1', 2)
    assert cyclic_reduce(p) == nc_parse('x1^2 x2', 2)
    assert cyclically_equivalent(p, nc_parse('x2 x1^2', 2))
    assert not cyclically_equivalent(p, nc_parse('x1 x2 x2', 2))


def test_word_count():
    """N(k) is a geometric sum in the alphabet size."""
    assert word_count(2, 2, 'symmetric') == 7
    assert word_count(1, 3, 'symmetric') == 4
    assert word_count(1, 2, FREE_STAR) == 7


def test_middle_matrix_of_square():
    """x^2 has Hessian 2hh, border [h] and middle matrix [2]."""
    rep = middle_matrix(nc_parse('x1^2', 1))
    assert rep.size == 1
    assert rep.is_constant()
    np.testing.assert_allclose(rep.constant_matrix(), [[2.0]])


def test_middle_matrix_reconstructs_hessian():
    """Border* M border reproduces the Hessian of x^4 + x1 x2 x1."""
    p = nc_parse('x1^4 + x1 x2 x1', 2)
    rep = middle_matrix(p)
    assert rep.reconstruct() == rep.target
    assert not rep.is_constant()
    with pytest.raises(InputError):
        middle_matrix(nc_parse('x1', 1))


def test_midpoint_defect_of_quartic():
    """The quartic fails midpoint convexity at a fixed pair of 2×2 matrices."""
    X = MatrixTuple.of([np.array([[4.0, 2.0], [2.0, 2.0]])])
    Y = MatrixTuple.of([np.array([[2.0, 0.0], [0.0, 0.0]])])
    defect = midpoint_defect(nc_parse('x1^4', 1), X, Y)
    np.testing.assert_allclose(defect, [[164.0, 120.0], [120.0, 84.0]])
    assert np.linalg.eigvalsh(defect)[0] < 0.0


def test_convexity_verdicts():
    """Degree ≤ 1 and PSD quadratics are convex; others come with witnesses."""
    linear = convexity_test(nc_parse('x1 + 2*x2', 2))
    assert linear.verdict == CONVEX
    assert linear.reason == DEGREE_THEOREM

    square = convexity_test(nc_parse('x1^2 + x2^2', 2))
    assert square.verdict == CONVEX
    assert square.reason == MIDDLE_MATRIX_PSD

    for text in ('-x1^2', 'x1 x2 + x2 x1'):
        verdict = convexity_test(nc_parse(text, 2))
        assert verdict.verdict == NOT_CONVEX
        assert verdict.witness is not None
        assert verdict.witness.min_eig < 0.0


def test_quartic_is_not_convex_with_witness():
    """Degree above two is never matrix convex; the search finds a defect."""
    verdict = convexity_test(nc_parse('x1^4', 1))
    assert verdict.verdict == NOT_CONVEX
    assert verdict.witness is not None
    w = verdict.witness
    recomputed = midpoint_defect(nc_parse('x1^4', 1), w.X, w.Y, w.t)
    assert np.linalg.eigvalsh(recomputed)[0] < 0.0


def test_convexity_rejects_free_star_mode():
    with pytest.raises(InputError):
        convexity_test(nc_parse("x1' x1", 1, FREE_STAR))


def test_hermitian_squares():
    """x1 x2 x2 x1 + 1 = (x2 x1)*(x2 x1) + 1 is a sum of hermitian squares."""
    result = nc_sos_check(nc_parse('x1 x2 x2 x1 + 1', 2))
    assert result.is_sos
    assert result.residual <= 1e-6
    assert result.squares


def test_non_sos_has_negativity_witness():
    """x1 x2 + x2 x1 takes negative values on some symmetric pair."""
    p = nc_parse('x1 x2 + x2 x1', 2)
    result = nc_sos_check(p)
    assert not result.is_sos
    assert result.witness is not None
    xi = result.witness.vector
    assert xi @ nc_eval(p, result.witness.tuple) @ xi < 0.0


def test_odd_degree_nc_polynomial():
    result = nc_sos_check(nc_parse('x1^3', 1))
    assert not result.is_sos
    assert result.reason == 'odd_degree'


def test_lmi_from_quadratic_inequality():
    """x^2 − 1 ⪯ 0 becomes a 2×2 pencil whose Schur complement is x^2 − 1."""
    P = nc_parse('x1^2 - 1', 1)
    rep = build_lmi(P, MatrixTuple.of([]), size=1)
    assert rep.num_unknowns == 1
    assert rep.dimension == 2
    X = rep.unknowns_to_tuple(np.array([0.5]))
    np.testing.assert_allclose(rep.schur_complement(X), [[-0.75]])
    np.testing.assert_allclose(rep.target(X), [[-0.75]])


def test_lmi_with_known_letters():
    """a x + x a + x^2 at a fixed A keeps the Schur identity."""
    P = nc_parse('a1 x1 + x1 a1 + x1^2', 1, num_a=1)
    A = MatrixTuple.of([np.diag([1.0, 2.0])])
    rep = build_lmi(P, A)
    assert len(rep.unknowns) == 3
    X = rep.unknowns_to_tuple(np.array([0.3, -0.2, 0.7]))
    np.testing.assert_allclose(rep.schur_complement(X), rep.target(X), atol=1e-10)


def test_lmi_rejects_bad_input():
    """Cubic unknowns and a negative middle matrix cannot become LMIs."""
    with pytest.raises(InputError):
        build_lmi(nc_parse('x1^3', 1), MatrixTuple.of([]))
    with pytest.raises(InputError):
        build_lmi(nc_parse('-x1^2', 1), MatrixTuple.of([]))


def test_left_ideal_membership():
    """x^2 − 1 = (x + 1)(x − 1) lies in F·(x − 1); x^2 + 1 does not."""
    generator = nc_parse('x1 - 1', 1)
    member = left_ideal_member(nc_parse('x1^2 - 1', 1), [generator], 2)
    assert member.member
    assert member.residual <= 1e-9
    assert not left_ideal_member(nc_parse('x1^2 + 1', 1), [generator], 2).member
    with pytest.raises(InputError):
        left_ideal_member(nc_parse('x1^3', 1), [generator], 2)


def test_quotient_by_left_ideal():
    """Modulo x − 1 every word reduces to a multiple of 1 and x acts as 1."""
    qb = quotient_basis([nc_parse('x1 - 1', 1)], 2)
    assert qb.dimension == 1
    assert qb.basis == [()]
    np.testing.assert_allclose(quotient_action(nc_parse('x1^2', 1), qb), [1.0], atol=1e-9)
    np.testing.assert_allclose(quotient_action(nc_parse('x1^2 - 1', 1), qb), [0.0], atol=1e-9)


def _random_word(rng, num_vars, length):
    return tuple(2 * int(v) for v in rng.integers(0, num_vars, size=length))


def _random_symmetric(rng, num_vars, degree):
    """q + q* for q with random words, one of them of full length."""
    words = [_random_word(rng, num_vars, degree)]
    words += [_random_word(rng, num_vars, int(rng.integers(0, degree + 1))) for _ in range(3)]
    q = NcPoly(num_vars, {w: float(rng.normal()) for w in words})
    return q + q.star()


@pytest.mark.parametrize('seed', range(100))
def test_random_higher_degree_is_not_convex(seed):
    """Symmetric polynomials of degree 3 to 6 are not convex, with a verified witness."""
    rng = np.random.default_rng(seed)
    num_vars = int(rng.integers(1, 4))
    p = _random_symmetric(rng, num_vars, int(rng.integers(3, 7)))
    assert p.is_symmetric()
    assert p.degree >= 3

    verdict = convexity_test(p)
    assert verdict.verdict == NOT_CONVEX
    assert verdict.witness is not None
    w = verdict.witness
    assert np.linalg.eigvalsh(midpoint_defect(p, w.X, w.Y, w.t))[0] < -1e-8


@pytest.mark.parametrize('seed', range(100))
def test_random_sum_of_squared_linear_forms_is_convex(seed):
    """affine + Σ ℓ_j² is convex, decided by a PSD middle matrix."""
    rng = np.random.default_rng(seed)
    num_vars = int(rng.integers(1, 4))
    variables = [NcPoly.variable(num_vars, i + 1) for i in range(num_vars)]

    def linear():
        return sum((float(c) * x for c, x in zip(rng.normal(size=num_vars), variables)),
                   NcPoly.constant(num_vars, float(rng.normal())))

    p = linear()
    for _ in range(int(rng.integers(1, 4))):
        ell = linear()
        p = p + ell * ell
    assert p.degree == 2

    verdict = convexity_test(p)
    assert verdict.verdict == CONVEX
    assert verdict.reason == MIDDLE_MATRIX_PSD


@pytest.mark.parametrize('seed', range(20))
def test_derivative_matches_central_differences(seed):
    """p′(X)[H] agrees with (p(X + tH) − p(X − tH)) / 2t at t = 1e-5."""
    rng = np.random.default_rng(seed)
    num_vars = int(rng.integers(1, 4))
    p = _random_symmetric(rng, num_vars, int(rng.integers(1, 5)))
    X = MatrixTuple.random(num_vars, 3, rng)
    H = MatrixTuple.random(num_vars, 3, rng)
    t = 1e-5

    exact = nc_eval(nc_derivative(p, 1), MatrixTuple.of(list(X.matrices) + list(H.matrices)))
    central = (nc_eval(p, X.combine(H, 1.0, t)) - nc_eval(p, X.combine(H, 1.0, -t))) / (2 * t)
    error = np.linalg.norm(exact - central) / max(1.0, np.linalg.norm(exact))
    assert error <= 1e-6
