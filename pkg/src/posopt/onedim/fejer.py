"""Riesz-Fejér factorization of nonnegative trigonometric polynomials."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from ..errors import DimensionError, InputError, NumericalError

logger = logging.getLogger(__name__)

CIRCLE_SAMPLES = 4096
# roots this close to the unit circle (and to each other) are treated as one circle root
CLUSTER_RADIUS = 1e-3

ComplexLike = Union[complex, float, Sequence[float]]


def to_complex(value: ComplexLike) -> complex:
    """Accept a number, a ``[re, im]`` pair or a string like ``1-2i``."""
    if isinstance(value, str):
        text = value.strip().replace(' ', '').replace('i', 'j')
        try:
            return complex(text)
        except ValueError as exc:
            raise InputError(f'Bad complex number {value!r}') from exc
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InputError(f'Complex pair must have two entries, got {value!r}')
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def complex_array(values: Iterable[ComplexLike]) -> np.ndarray:
    return np.array([to_complex(v) for v in values], dtype=complex)


@dataclass
class TrigPoly:
    """p(θ) = Σ_{j=−d}^{d} c_j e^{ijθ}, coefficients stored c_{−d}..c_d."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if self.coeffs.size % 2 == 0:
            raise DimensionError('TrigPoly needs an odd number of coefficients c_{-d}..c_d')

    @classmethod
    def from_values(cls, values: Iterable[ComplexLike]) -> 'TrigPoly':
        return cls(complex_array(values))

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coefficient(self, j: int) -> complex:
        return complex(self.coeffs[j + self.degree])

    def trimmed(self, tol: float = 0.0) -> 'TrigPoly':
        """Drop outer coefficient pairs with modulus ≤ tol."""
        c = self.coeffs
        while c.size > 1 and abs(c[0]) <= tol and abs(c[-1]) <= tol:
            c = c[1:-1]
        return TrigPoly(c)

    def is_real_valued(self, tol: float = 1e-12) -> bool:
        scale = 1.0 + float(np.abs(self.coeffs).max())
        return bool(np.abs(self.coeffs - np.conj(self.coeffs[::-1])).max() <= tol * scale)

    def __call__(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        powers = np.arange(-self.degree, self.degree + 1)
        return np.exp(1j * np.multiply.outer(theta, powers)) @ self.coeffs

    def samples(self, count: int = CIRCLE_SAMPLES) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(count) / count
        return np.real(self(theta))

    def to_list(self) -> List[List[float]]:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]


@dataclass
class FejerFactor:
    """Analytic polynomial q(z) = Σ q_k z^k with |q(e^{iθ})|² = p(θ)."""

    coeffs: np.ndarray
    max_error: float

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z) -> np.ndarray:
        return np.polyval(self.coeffs[::-1], z)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'coefficients': [[float(c.real), float(c.imag)] for c in self.coeffs],
            'max_error': self.max_error,
        }


def modulus_squared(q: Sequence[complex]) -> TrigPoly:
    """Trigonometric polynomial |q(e^{iθ})|² for q given by ascending coefficients."""
    q = np.asarray(q, dtype=complex)
    full = np.convolve(q, np.conj(q[::-1]))
    return TrigPoly(full)


def _circle_clusters(roots: np.ndarray, radius: float = CLUSTER_RADIUS) -> List[np.ndarray]:
    """Group roots within ``radius`` of the unit circle by proximity to a seed root."""
    near = [r for r in roots if abs(abs(r) - 1.0) <= radius]
    clusters = []
    while near:
        seed = near[0]
        members = [r for r in near if abs(r - seed) <= radius]
        near = [r for r in near if abs(r - seed) > radius]
        clusters.append(np.array(members))
    return clusters


def _polished_inner(roots: np.ndarray, d: int) -> Optional[np.ndarray]:
    """Inner roots with each circle cluster of size 2m replaced by m copies of its centroid.

    Roots of even multiplicity on the circle split into clusters of size about
    eps^{1/2m}; the centroid is accurate to working precision. Returns None
    when the clusters do not pair up.
    """
    inner = [r for r in roots if abs(r) < 1.0 - CLUSTER_RADIUS]
    for cluster in _circle_clusters(roots):
        if cluster.size % 2:
            return None
        center = cluster.mean()
        inner.extend([center / abs(center)] * (cluster.size // 2))
    if len(inner) != d:
        return None
    return np.array(inner, dtype=complex)


def _factor_from_roots(inner: np.ndarray, lead: float) -> np.ndarray:
    magnitude = np.sqrt(lead / float(np.prod(np.abs(inner))))
    monic = np.poly(inner)[::-1]
    constant = monic[0]
    phase = np.conj(constant) / abs(constant) if abs(constant) > 0 else 1.0
    return magnitude * phase * monic


def _circle_error(q: np.ndarray, values: np.ndarray) -> float:
    circle = np.exp(2j * np.pi * np.arange(values.size) / values.size)
    return float(np.abs(np.abs(np.polyval(q[::-1], circle)) ** 2 - values).max())


def riesz_fejer_factor(p: TrigPoly, tol: float = 1e-9) -> FejerFactor:
    """Factor a nonnegative trigonometric polynomial as |q|² with q analytic.

    Roots of z^d p(z) pair up as (r, 1/r̄); q collects the d roots of smallest
    modulus, so circle roots (double) contribute once. Circle roots are
    polished by cluster averaging and kept when that lowers the error. q is
    scaled so that q(0) is real and nonnegative.

    Raises:
        InputError: p is not real valued or is negative on the circle.
        NumericalError: the product |q|² does not reproduce p.
    """
    if not p.is_real_valued():
        raise InputError('Trigonometric polynomial is not real valued (c_{-n} != conj(c_n))')
    values = p.samples()
    sup = float(np.abs(values).max())
    worst = int(np.argmin(values))
    if values[worst] < -tol * (1.0 + sup):
        theta = 2.0 * np.pi * worst / CIRCLE_SAMPLES
        raise InputError(f'p is negative on the circle: p({theta:.6f}) = {values[worst]:.6e}')

    p = p.trimmed(tol=1e-14 * (1.0 + float(np.abs(p.coeffs).max())))
    d = p.degree
    if d == 0:
        c0 = max(float(p.coeffs[0].real), 0.0)
        return FejerFactor(np.array([np.sqrt(c0)], dtype=complex), 0.0)

    # z^d p(z): ascending coefficients c_{-d}..c_d
    roots = np.roots(p.coeffs[::-1])
    if roots.size != 2 * d or not np.all(np.isfinite(roots)):
        raise NumericalError('Root finding failed for the Riesz-Fejér factorization')
    lead = abs(p.coeffs[-1])
    q = _factor_from_roots(roots[np.argsort(np.abs(roots), kind='stable')][:d], lead)
    error = _circle_error(q, values)

    polished = _polished_inner(roots, d)
    if polished is not None:
        q_polished = _factor_from_roots(polished, lead)
        error_polished = _circle_error(q_polished, values)
        if error_polished < error:
            logger.debug(f'Circle root polishing: error {error:.3e} -> {error_polished:.3e}')
            q, error = q_polished, error_polished

    scale = 1.0 + sup
    if error > 1e-6 * scale:
        raise NumericalError(f'Riesz-Fejér factor reproduces p only to {error:.3e}')
    if error > 1e-8 * scale:
        logger.warning(f'Riesz-Fejér factor error {error:.3e} exceeds 1e-8 relative')
    return FejerFactor(q, error)
