"""Tests for the one-variable tools: Sturm, Riesz-Fejér, disk counts, Schur and Pick."""

import numpy as np
import pytest

from src.posopt.errors import DimensionError, InputError
from src.posopt.onedim import (
    PickData,
    TrigPoly,
    caratheodory_pick,
    disk_root_count,
    modulus_squared,
    pick_interpolate,
    pick_matrix,
    riesz_fejer_factor,
    schur_parameters,
    sturm_count,
    to_complex,
    toeplitz_contraction_norm,
)
from src.posopt.poly import Monomial, Poly, parse_poly


def test_sturm_counts_distinct_real_roots():
    """x^3 − x has three real roots, one of them in (0, 2]."""
    p = parse_poly('x1^3 - x1', 1)
    assert sturm_count(p) == 3
    assert sturm_count(p, 0.0, 2.0) == 1
    assert sturm_count(parse_poly('x1^2 + 1', 1)) == 0
    # multiplicities collapse
    assert sturm_count(parse_poly('x1^2 - 2*x1 + 1', 1)) == 1


@pytest.mark.parametrize('seed', range(100))
def test_sturm_matches_companion_eigenvalues(seed):
    """Counts agree with the real companion eigenvalues for roots at least 0.01 apart."""
    rng = np.random.default_rng(seed)
    degree = int(rng.integers(1, 9))
    num_real = int(rng.integers(0, degree + 1))
    if (degree - num_real) % 2:
        num_real += 1
    real = rng.choice(np.arange(-300, 301) * 0.01, size=num_real, replace=False)
    pairs = [complex(rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0))
             for _ in range((degree - num_real) // 2)]
    roots = list(real) + [z for c in pairs for z in (c, c.conjugate())]
    coeffs = np.real(np.poly(roots))
    p = Poly(1, {Monomial((degree - i,)): float(c) for i, c in enumerate(coeffs)})

    eigenvalues = np.roots(coeffs)
    real_eigs = eigenvalues[np.abs(eigenvalues.imag) <= 1e-6].real
    assert sturm_count(p) == real_eigs.size == num_real

    # interval ends sit halfway between grid points
    lo, hi = np.sort(rng.choice(np.arange(-301, 301) * 0.01 + 0.005, size=2, replace=False))
    inside = int(np.sum((real_eigs > lo) & (real_eigs <= hi)))
    assert sturm_count(p, float(lo), float(hi)) == inside


def test_sturm_rejects_bad_input():
    """Empty intervals and multivariate input are refused."""
    p = parse_poly('x1^2 - 1', 1)
    with pytest.raises(InputError):
        sturm_count(p, 1.0, 1.0)
    with pytest.raises(DimensionError):
        sturm_count(parse_poly('x1*x2', 2))


def test_fejer_factor_reproduces_modulus():
    """|q(e^{iθ})|² rebuilt from the factor matches the input."""
    q = np.array([1.0, -0.5 + 0.25j, 0.3])
    p = modulus_squared(q)
    assert p.is_real_valued()
    factor = riesz_fejer_factor(p)
    assert factor.degree == 2
    assert factor.max_error <= 1e-8
    np.testing.assert_allclose(modulus_squared(factor.coeffs).coeffs, p.coeffs, atol=1e-8)
    # q(0) is real and nonnegative
    assert factor.coeffs[0].imag == pytest.approx(0.0, abs=1e-10)
    assert factor.coeffs[0].real >= 0.0


def test_fejer_double_root_on_circle():
    """2 − 2cos θ = |1 − z|² keeps its circle root to working precision."""
    factor = riesz_fejer_factor(TrigPoly([-1.0, 2.0, -1.0]))
    np.testing.assert_allclose(factor.coeffs, [1.0, -1.0], atol=1e-12)
    assert factor.max_error <= 1e-12


def test_fejer_several_circle_roots():
    """|(z − 1)(z − e^{i})|² factors with both roots back on the circle."""
    q = np.convolve([-1.0, 1.0], [-np.exp(1j), 1.0])
    p = modulus_squared(q)
    factor = riesz_fejer_factor(p)
    assert factor.max_error <= 1e-11
    np.testing.assert_allclose(modulus_squared(factor.coeffs).coeffs, p.coeffs, atol=1e-11)
    roots = np.roots(factor.coeffs[::-1])
    np.testing.assert_allclose(np.abs(roots), [1.0, 1.0], atol=1e-10)


@pytest.mark.parametrize('seed', range(100))
def test_fejer_round_trip_random(seed):
    """|q|² for random q of degree ≤ 8 refactors to sup-norm error 1e-8 of its size."""
    rng = np.random.default_rng(seed)
    degree = int(rng.integers(1, 9))
    q = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    p = modulus_squared(q)
    factor = riesz_fejer_factor(p)
    sup = float(np.abs(p.samples()).max())
    assert factor.degree == degree
    assert factor.max_error <= 1e-8 * (1.0 + sup)
    np.testing.assert_allclose(modulus_squared(factor.coeffs).coeffs, p.coeffs,
                               atol=1e-8 * (1.0 + sup))


def test_fejer_constant_polynomial():
    """A constant 4 factors as 2."""
    factor = riesz_fejer_factor(TrigPoly([4.0]))
    assert factor.coeffs[0] == pytest.approx(2.0)


def test_fejer_rejects_negative_and_complex():
    """Negative somewhere on the circle or not real valued raises InputError."""
    with pytest.raises(InputError):
        riesz_fejer_factor(TrigPoly([1.0, 0.0, 1.0]))
    with pytest.raises(InputError):
        riesz_fejer_factor(TrigPoly([1j, 3.0, 1j]))


def test_disk_root_count():
    """Roots inside, outside and on the unit circle are told apart."""
    assert disk_root_count([-0.5, 1.0]).inside == 1
    assert disk_root_count([-2.0, 1.0]).negative == 1
    # (z − 0.5)(z − 3)
    mixed = disk_root_count(np.convolve([-0.5, 1.0], [-3.0, 1.0]))
    assert (mixed.inside, mixed.negative, mixed.boundary) == (1, 1, 0)
    assert disk_root_count([-1.0, 1.0]).boundary == 1
    with pytest.raises(InputError):
        disk_root_count([0.0, 0.0])


def test_schur_parameters():
    """Feasible, infeasible and terminating Taylor data."""
    ok = schur_parameters([0.5, 0.5])
    assert ok.feasible
    assert not ok.terminated
    assert abs(ok.params[1]) == pytest.approx(0.5 / 0.75)

    bad = schur_parameters([0.5, 0.9])
    assert not bad.feasible
    assert abs(bad.params[-1]) > 1.0

    assert schur_parameters([1.0, 0.0]).terminated
    assert schur_parameters([1.0, 0.0]).feasible
    assert not schur_parameters([1.0, 0.1]).feasible


def test_schur_and_contraction_norm_agree():
    """Feasibility matches the Toeplitz contraction test."""
    for taylor in ([0.3, 0.4, -0.2], [0.9, 0.5]):
        seq = schur_parameters(taylor)
        assert seq.feasible == (seq.contraction_norm <= 1.0 + 1e-9)


@pytest.mark.parametrize('seed', range(50))
def test_disk_count_matches_companion(seed):
    """The signature of the disk form counts the companion eigenvalues inside the disk."""
    rng = np.random.default_rng(seed)
    degree = int(rng.integers(1, 5))
    inside = int(rng.integers(0, degree + 1))
    radii = np.concatenate([rng.uniform(0.1, 0.6, inside),
                            rng.uniform(1.7, 2.5, degree - inside)])
    roots = radii * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, degree))
    coeffs = np.poly(roots)[::-1]

    count = disk_root_count(coeffs)
    moduli = np.abs(np.roots(coeffs[::-1]))
    assert count.inside == int(np.sum(moduli < 1.0)) == inside
    assert count.negative == degree - inside
    assert count.boundary == 0


@pytest.mark.parametrize('seed', range(50))
def test_schur_verdict_matches_toeplitz_norm(seed):
    """Taylor data scaled to a chosen Toeplitz norm is feasible exactly below norm one."""
    rng = np.random.default_rng(seed)
    size = int(rng.integers(1, 6))
    c = rng.normal(size=size) + 1j * rng.normal(size=size)
    target = rng.uniform(0.5, 0.95) if seed % 2 else rng.uniform(1.05, 1.5)
    c *= target / toeplitz_contraction_norm(c)

    seq = schur_parameters(c)
    assert seq.contraction_norm == pytest.approx(target)
    assert seq.feasible == (target < 1.0)


def test_pick_matrix_entries():
    """Entries are (1 − d_i d̄_j)/(1 − a_i ā_j)."""
    M = pick_matrix([0.0, 0.5], [0.25, 0.0])
    assert M[0, 0] == pytest.approx(1.0 - 0.0625)
    assert M[1, 1] == pytest.approx(1.0 / 0.75)
    assert M[0, 1] == pytest.approx(1.0)


def test_pick_interpolation_feasible():
    """A feasible problem yields a contractive interpolant through the data."""
    data = PickData([0.0, 0.5j], [0.2, 0.1 + 0.1j])
    result = pick_interpolate(data)
    assert result.feasible
    assert result.realization is not None
    assert result.interpolation_error <= 1e-8
    assert result.realization.norm <= 1.0 + 1e-8


def test_pick_boundary_case():
    """f(z) = z interpolates (0, 0) and (0.5, 0.5) with a singular Pick matrix."""
    result = pick_interpolate(PickData([0.0, 0.5], [0.0, 0.5]))
    assert result.feasible
    assert result.min_eig == pytest.approx(0.0, abs=1e-9)
    assert result.realization(0.5) == pytest.approx(0.5, abs=1e-8)


def test_pick_infeasible():
    """A target outside the disk or an indefinite kernel is infeasible."""
    assert not pick_interpolate(PickData([0.0], [1.5])).feasible
    # Schwarz lemma: f(0) = 0 forces |f(0.5)| ≤ 0.5
    assert not pick_interpolate(PickData([0.0, 0.5], [0.0, 0.8])).feasible


def _separated_nodes(rng, count, radius=0.8, gap=0.2):
    while True:
        nodes = radius * np.sqrt(rng.uniform(size=count)) * np.exp(
            1j * rng.uniform(0.0, 2.0 * np.pi, count))
        distances = np.abs(nodes[:, None] - nodes[None, :]) + np.eye(count)
        if distances.min() >= gap:
            return nodes


@pytest.mark.parametrize('seed', range(30))
def test_pick_interpolates_schur_function_data(seed):
    """Values of 0.9·(z − b)/(1 − b̄z) are interpolated by a contractive realization."""
    rng = np.random.default_rng(seed)
    nodes = _separated_nodes(rng, int(rng.integers(1, 5)))
    b = 0.5 * rng.uniform() * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    targets = 0.9 * (nodes - b) / (1.0 - np.conj(b) * nodes)

    result = pick_interpolate(PickData(nodes, targets))
    assert result.feasible
    assert result.interpolation_error <= 1e-6
    assert result.sup_norm <= 1.0 + 1e-6


@pytest.mark.parametrize('seed', range(30))
def test_pick_rotation_invariance(seed):
    """Rotating every node by e^{iφ} leaves the Pick matrix and the verdict unchanged."""
    rng = np.random.default_rng(seed)
    count = int(rng.integers(1, 5))
    nodes = _separated_nodes(rng, count)
    targets = 0.95 * np.sqrt(rng.uniform(size=count)) * np.exp(
        1j * rng.uniform(0.0, 2.0 * np.pi, count))
    rotated = nodes * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))

    np.testing.assert_allclose(pick_matrix(rotated, targets), pick_matrix(nodes, targets),
                               atol=1e-12)
    assert (pick_interpolate(PickData(rotated, targets)).feasible
            == pick_interpolate(PickData(nodes, targets)).feasible)


def test_pick_data_validation():
    """Nodes must be distinct, inside the disk, and match the targets."""
    with pytest.raises(InputError):
        PickData([1.0], [0.0])
    with pytest.raises(InputError):
        PickData([0.1, 0.1], [0.0, 0.0])
    with pytest.raises(InputError):
        PickData([0.1, 0.2], [0.0])


def test_caratheodory_variant():
    """Values with positive real part are interpolated by a function with Re f ≥ 0."""
    result = caratheodory_pick([0.0, 0.3], [1.0, 1.2 + 0.1j])
    assert result.feasible
    assert result.value(0.3) == pytest.approx(1.2 + 0.1j, abs=1e-7)
    assert not caratheodory_pick([0.0], [-1.0]).feasible


def test_complex_parsing():
    """Numbers, pairs and strings are all accepted."""
    assert to_complex('1-2i') == 1 - 2j
    assert to_complex([0.5, 1.0]) == 0.5 + 1j
    assert to_complex(3) == 3
    with pytest.raises(InputError):
        to_complex([1.0])
