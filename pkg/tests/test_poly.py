"""Tests for the commutative polynomial substrate."""

import numpy as np
import pytest

from src.posopt.errors import DimensionError, ParseError
from src.posopt.poly import (
    Monomial,
    Poly,
    derive,
    graded_lex_monomials,
    infer_num_vars,
    is_close,
    parse_poly,
    poly_sum,
    sum_of_squares_poly,
)


MOTZKIN = 'x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2'


def test_parse_and_render_round_trip():
    """Rendering gives the canonical text, highest term first."""
    p = parse_poly('3*x1^2*x2 - 1.5*x2 + 2', 2)
    assert p.render() == '3*x1^2*x2 - 1.5*x2 + 2'
    assert parse_poly(p.render(), 2) == p


def test_parenthesized_powers_expand():
    """(x1 - 1)^2 + 2 expands to x1^2 - 2 x1 + 3."""
    p = parse_poly('(x1 - 1)^2 + 2', 1)
    assert p.coefficient([2]) == 1.0
    assert p.coefficient([1]) == -2.0
    assert p.constant_term() == 3.0
    assert p.degree == 2


def test_zero_coefficients_are_dropped():
    """Cancelling terms leave no stored monomial."""
    p = parse_poly('x1*x2 - x2*x1 + 1', 2)
    assert len(p) == 1
    assert p == 1


def test_parse_errors_carry_position():
    """Bad tokens raise ParseError with the offending position."""
    with pytest.raises(ParseError) as info:
        parse_poly('x1 + $', 1)
    assert info.value.position == 5

    with pytest.raises(ParseError):
        parse_poly('x3 + 1', 2)

    with pytest.raises(ParseError):
        parse_poly('', 1)


def test_infer_num_vars():
    """The largest index mentioned sets the variable count."""
    assert infer_num_vars(MOTZKIN) == 2
    assert infer_num_vars('7') == 1
    assert infer_num_vars('x1 + x12') == 12


def test_graded_lex_order():
    """Monomials come ordered by total degree, then lexicographically."""
    monos = graded_lex_monomials(2, 2)
    assert [m.exponents for m in monos] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(graded_lex_monomials(3, 3)) == 20


def test_monomial_arithmetic():
    """Products add exponents and division checks divisibility."""
    a = Monomial((1, 2))
    b = Monomial((2, 0))
    assert (a * b).exponents == (3, 2)
    assert ((a * b) / b) == a
    with pytest.raises(ValueError):
        b / a
    assert Monomial.from_key_string(a.key_string()) == a


def test_arithmetic_identities():
    """(x + y)^2 = x^2 + 2xy + y^2."""
    x = Poly.variable(2, 1)
    y = Poly.variable(2, 2)
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x).is_zero()
    assert (x + 1).degree == 1


def test_mismatched_variable_counts():
    """Adding polynomials in different spaces is a DimensionError."""
    with pytest.raises(DimensionError):
        Poly.variable(2, 1) + Poly.variable(3, 1)


def test_evaluation_matches_numpy():
    """Pointwise and batched evaluation agree."""
    p = parse_poly(MOTZKIN, 2)
    rng = np.random.default_rng(0)
    points = rng.standard_normal((20, 2))
    batched = p.eval_many(points)
    single = np.array([p(pt) for pt in points])
    np.testing.assert_allclose(batched, single, rtol=1e-12)
    assert p([1.0, 1.0]) == pytest.approx(0.0)


def test_derivative():
    """∂/∂x1 of x1^3*x2 is 3*x1^2*x2."""
    p = parse_poly('x1^3*x2 + x2^2', 2)
    assert derive(p, 1) == parse_poly('3*x1^2*x2', 2)
    with pytest.raises(DimensionError):
        derive(p, 3)


def test_substitute_keeps_variable_count():
    """Fixing x2 = 2 leaves a polynomial in x1 only."""
    p = parse_poly('x1*x2 + x2^2', 2)
    q = p.substitute(2, 2.0)
    assert q.num_vars == 2
    assert q == parse_poly('2*x1 + 4', 2)


def test_poly_sum_and_sum_of_squares():
    """Σ x_i^2 built two ways agrees."""
    direct = sum_of_squares_poly(3)
    summed = poly_sum((Poly.variable(3, i) ** 2 for i in (1, 2, 3)), 3)
    assert direct == summed
    assert poly_sum([], 3).is_zero()


def test_is_close_uses_relative_tolerance():
    """Tiny coefficient noise is tolerated."""
    p = parse_poly('x1^2 + 1', 1)
    assert is_close(p, p + 1e-12)
    assert not is_close(p, p + 1e-3)


def test_even_and_homogeneous():
    """Motzkin is even but not homogeneous."""
    p = parse_poly(MOTZKIN, 2)
    assert p.is_even()
    assert not p.is_homogeneous()
    assert parse_poly('x1^2 + x1*x2', 2).is_homogeneous()
