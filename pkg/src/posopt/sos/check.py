"""Sum-of-squares certification with certificates and separating witnesses."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..errors import NumericalError, OddDegreeError
from ..poly import Monomial, Poly, coefficient_residual, poly_sum
from ..sdp import DUAL_INFEASIBLE, SdpSolution, Tolerances, is_usable, solve_sdp
from .gram import GramSystem, build_gram_system, extract_squares, gram_sdp

logger = logging.getLogger(__name__)


@dataclass
class SosCertificate:
    """Gram matrix Ω ⪰ 0 with tr(B_α Ω) = f_α and the squares it factors into."""

    gram: np.ndarray
    squares: List[Poly]
    residual: float
    basis: List[Monomial]

    @property
    def rank(self) -> int:
        return len(self.squares)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'basis': [m.render() for m in self.basis],
            'gram': self.gram.tolist(),
            'squares': [q.render() for q in self.squares],
            'residual': self.residual,
        }


@dataclass
class Witness:
    """Linear functional L on polynomials with L(f) < 0 ≤ L(q²) for basis-supported q."""

    values: Dict[Monomial, float]
    basis: List[Monomial]

    def __call__(self, p: Poly) -> float:
        return float(sum(c * self.values.get(m, 0.0) for m, c in p.items()))

    def moment_matrix(self) -> np.ndarray:
        n = len(self.basis)
        mat = np.empty((n, n))
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                mat[i, j] = self.values.get(u * v, 0.0)
        return mat

    def to_dict(self) -> Dict[str, Any]:
        return {
            'values': {m.key_string(): v for m, v in self.values.items()},
            'basis': [m.key_string() for m in self.basis],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Witness':
        values = {Monomial.from_key_string(k): float(v) for k, v in data['values'].items()}
        basis = [Monomial.from_key_string(b) for b in data['basis']]
        return cls(values, basis)


@dataclass
class SosResult:
    is_sos: bool
    margin: float
    certificate: Optional[SosCertificate] = None
    witness: Optional[Witness] = None
    reason: str = ''
    solver: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'is_sos': self.is_sos, 'margin': self.margin}
        if self.reason:
            out['reason'] = self.reason
        if self.certificate is not None:
            out['certificate'] = self.certificate.to_dict()
        if self.witness is not None:
            out['infeasibility_witness'] = self.witness.to_dict()
        if self.solver:
            out['solver'] = self.solver
        return out


def _margin_tol(f: Poly, tol: Tolerances) -> float:
    return 10.0 * tol.feas_tol * (1.0 + f.coeff_norm())


def _solve_margin(system: GramSystem, tol: Tolerances) -> SdpSolution:
    solution = solve_sdp(gram_sdp(system), tol)
    if not is_usable(solution, tol) and solution.status != DUAL_INFEASIBLE:
        raise NumericalError(f'Gram SDP failed with status {solution.status}', solution.status)
    return solution


def _witness_from_dual(system: GramSystem, y: np.ndarray) -> Witness:
    """L = −y, scaled so L(1) = 1 when L(1) is nonzero."""
    values = {a: -float(v) for a, v in zip(system.monomials, y)}
    one = Monomial.one(system.target.num_vars)
    scale = values.get(one, 0.0)
    if scale <= 1e-12 * max(1.0, max(abs(v) for v in values.values())):
        scale = max(abs(v) for v in values.values()) or 1.0
        values[one] = 0.0
    return Witness({a: v / scale for a, v in values.items()}, list(system.basis))


def _uncovered_witness(system: GramSystem) -> Witness:
    """Functional on a monomial no product of basis monomials reaches."""
    alpha = system.uncovered[0]
    sign = -1.0 if system.target.coefficient(alpha) > 0 else 1.0
    return Witness({alpha: sign}, list(system.basis))


def sos_check(f: Poly, tol: Optional[Tolerances] = None, prune: bool = True) -> SosResult:
    """Decide whether f is a sum of squares.

    Solves ``max t s.t. tr(B_α Ω) = f_α, Ω − tI ⪰ 0``. f is SOS iff t* ≥ −tol; then
    the certificate holds the Gram matrix projected onto the trace constraints
    and its squares. Otherwise the optimal dual functional separates f from the
    square cone over the full half-degree basis.
    """
    tol = tol or Tolerances()
    try:
        system = build_gram_system(f, prune=prune)
    except OddDegreeError as exc:
        logger.info(f'sos_check: {exc}')
        return SosResult(False, -np.inf, reason='odd_degree')

    if system.uncovered:
        full = build_gram_system(f) if prune else system
        if full.uncovered:
            return SosResult(False, -np.inf, witness=_uncovered_witness(full),
                             reason='uncovered_monomial')
        system = full

    solution = _solve_margin(system, tol)
    if solution.status == DUAL_INFEASIBLE:
        raise NumericalError('Gram SDP reported an unbounded margin', solution.status)
    margin = float(solution.free[0])
    diagnostics = {'status': solution.status, 'iterations': solution.iterations,
                   'basis_size': system.size}
    logger.info(f'sos_check: margin {margin:.3e} on a basis of {system.size} monomials')

    if margin >= -_margin_tol(f, tol):
        gram = system.project(solution.x_blocks[0] + max(margin, 0.0) * np.eye(system.size))
        squares = extract_squares(gram, system, tol.rank_tol)
        total = poly_sum((q * q for q in squares), f.num_vars)
        certificate = SosCertificate(gram, squares, coefficient_residual(total, f),
                                     list(system.basis))
        return SosResult(True, margin, certificate=certificate, solver=diagnostics)

    if prune and system.size < len(build_gram_system(f).basis):
        # witness against the full square cone of degree deg f
        system = build_gram_system(f)
        solution = _solve_margin(system, tol)
        diagnostics['witness_basis_size'] = system.size
    return SosResult(False, margin, witness=_witness_from_dual(system, solution.y),
                     solver=diagnostics)


def verify_witness(witness: Witness, f: Poly, rng: Optional[np.random.Generator] = None,
                   samples: int = 200, tol: float = 1e-6) -> Dict[str, Any]:
    """Check L(f) < 0 and L(q²) ≥ −tol·‖q‖² on random basis-supported q."""
    rng = rng or np.random.default_rng(0)
    moment = witness.moment_matrix()
    scale = max(1.0, float(np.abs(moment).max(initial=0.0)))
    worst = np.inf
    for _ in range(samples):
        q = rng.standard_normal(len(witness.basis))
        q /= np.linalg.norm(q)
        worst = min(worst, float(q @ moment @ q))
    value = witness(f)
    return {
        'value_on_target': value,
        'min_on_squares': worst,
        'valid': bool(value < 0.0 and worst >= -tol * scale),
    }


def verify_certificate(certificate: SosCertificate, system: GramSystem,
                       tol: float = 1e-6) -> Dict[str, Any]:
    """Recompute the Gram identity and PSD-ness of a certificate."""
    eig = float(np.linalg.eigvalsh(certificate.gram)[0])
    trace_residual = system.residual(certificate.gram)
    scale = 1.0 + system.target.coeff_norm()
    return {
        'trace_residual': trace_residual,
        'min_eig': eig,
        'valid': bool(trace_residual <= tol * scale and eig >= -tol * scale),
    }
