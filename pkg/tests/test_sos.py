"""Tests for sum-of-squares certification, witnesses, multipliers and hermitian squares."""

import numpy as np
import pytest

from src.posopt.errors import InputError, OddDegreeError
from src.posopt.poly import is_close, parse_poly, poly_sum
from src.posopt.sos import (
    QUILLEN,
    REZNICK,
    HermitianPoly,
    Witness,
    build_gram_system,
    extract_squares,
    gram_sdp,
    hermitian_sos_check,
    multiplier_search,
    perturbation_eps,
    sos_check,
    theta,
    to_real_variables,
    verify_certificate,
    verify_witness,
)


MOTZKIN = 'x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2'


def test_strictly_positive_quadratic_is_sos():
    """x1^2 + x2^2 + 1 has a positive margin and squares that sum back to it."""
    f = parse_poly('x1^2 + x2^2 + 1', 2)
    result = sos_check(f)
    assert result.is_sos
    assert result.margin > 0.0
    total = poly_sum((q * q for q in result.certificate.squares), 2)
    assert is_close(total, f, tol=1e-6)
    assert result.certificate.residual <= 1e-8


def test_certificate_recheck():
    """A returned Gram matrix satisfies the trace identities and is PSD."""
    f = parse_poly('x1^4 - 2*x1^2 + 1', 1)
    result = sos_check(f)
    assert result.is_sos
    system = build_gram_system(f)
    assert verify_certificate(result.certificate, system)['valid']


def test_motzkin_is_not_sos():
    """The Motzkin polynomial is nonnegative but not a sum of squares."""
    f = parse_poly(MOTZKIN, 2)
    result = sos_check(f)
    assert not result.is_sos
    assert result.margin < 0.0
    assert result.witness is not None
    check = verify_witness(result.witness, f)
    assert check['valid']
    assert check['value_on_target'] < 0.0


def test_witness_serialization():
    """Witnesses survive a JSON-shaped round trip."""
    f = parse_poly(MOTZKIN, 2)
    witness = sos_check(f).witness
    back = Witness.from_dict(witness.to_dict())
    assert back(f) == pytest.approx(witness(f))
    assert back.basis == witness.basis


def test_odd_degree_is_not_sos():
    """Odd degree is refused before any SDP is set up."""
    result = sos_check(parse_poly('x1^3 + 1', 1))
    assert not result.is_sos
    assert result.reason == 'odd_degree'
    with pytest.raises(OddDegreeError):
        build_gram_system(parse_poly('x1^3', 1))


def test_newton_polytope_pruning():
    """Pruning drops basis monomials outside half the Newton polytope."""
    f = parse_poly(MOTZKIN, 2)
    full = build_gram_system(f)
    pruned = build_gram_system(f, prune=True)
    assert full.size == 10
    assert pruned.size < full.size
    assert not pruned.uncovered


def test_gram_sdp_shape():
    """The margin SDP has one free variable and one constraint per product monomial."""
    system = build_gram_system(parse_poly('x1^2 + 1', 1))
    problem = gram_sdp(system)
    assert problem.block_sizes == (2,)
    assert problem.num_constraints == len(system.monomials)
    assert problem.free_a.shape == (len(system.monomials), 1)


def test_extract_squares_from_gram():
    """A rank-one Gram matrix gives a single square."""
    f = parse_poly('x1^2 + 2*x1 + 1', 1)
    system = build_gram_system(f)
    squares = extract_squares(np.ones((2, 2)), system)
    assert len(squares) == 1
    assert is_close(squares[0] * squares[0], f)
    with pytest.raises(InputError):
        extract_squares(np.array([[1.0, 2.0], [2.0, 1.0]]), system)


@pytest.mark.slow
def test_reznick_multiplier_for_motzkin():
    """(1 + |x|^2) times Motzkin is a sum of squares."""
    result = multiplier_search(parse_poly(MOTZKIN, 2), REZNICK, m_max=2)
    assert result.found
    assert result.m == 1
    assert result.history[0] < 0.0


def test_multiplier_mode_validation():
    f = parse_poly('x1^2 + 1', 1)
    with pytest.raises(InputError):
        multiplier_search(f, 'unknown')
    with pytest.raises(InputError):
        multiplier_search(f, QUILLEN)
    assert multiplier_search(f, REZNICK).m == 0


def test_hermitian_squares():
    """|z|^2 + 1 is a hermitian sum of squares; its real form is x^2 + y^2 + 1."""
    p = HermitianPoly.parse('z1*zb1 + 1', 1)
    result = hermitian_sos_check(p)
    assert result.is_hsos
    assert len(result.squares) == 2
    assert to_real_variables(p) == parse_poly('x1^2 + x2^2 + 1', 2)
    assert p([2.0]).real == pytest.approx(5.0)


def test_nonnegative_but_not_hermitian_sos():
    """(|z|^2 − 1)^2 is nonnegative, yet its coefficient matrix is indefinite."""
    p = HermitianPoly.parse('z1^2*zb1^2 - 2*z1*zb1 + 1', 1)
    result = hermitian_sos_check(p)
    assert not result.is_hsos
    assert result.min_eig < 0.0
    # a zero on the circle defeats every |z|^{2N} multiplier
    search = multiplier_search(p, QUILLEN, m_max=2)
    assert not search.found
    assert len(search.history) == 3


def test_non_hermitian_coefficients_rejected():
    p = HermitianPoly(1, {((1,), (0,)): 1.0})
    with pytest.raises(InputError):
        hermitian_sos_check(p)


def test_theta_polynomial():
    assert theta(2, 2) == parse_poly('1 + x1^4 + x2^4', 2)


def test_perturbation_of_motzkin():
    """Motzkin needs a positive multiple of Θ_3 to become SOS; x^2 + 1 needs none."""
    motzkin = perturbation_eps(parse_poly(MOTZKIN, 2), 3)
    assert motzkin.eps_star < 0.0

    easy = perturbation_eps(parse_poly('x1^2 + 1', 1), 1)
    assert easy.eps_star == pytest.approx(0.0, abs=1e-6)

    with pytest.raises(InputError):
        perturbation_eps(parse_poly(MOTZKIN, 2), 2)
