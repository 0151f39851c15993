"""Gram-matrix systems for sums of squares.

For a basis V(x) of monomials, V(x)·V(x)ᵀ = Σ_α B_α x^α with 0/1 matrices B_α.
A polynomial f is a sum of squares iff some PSD Ω satisfies tr(B_α Ω) = f_α
for every α.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.optimize import linprog

from ..errors import InputError, OddDegreeError
from ..poly import Monomial, Poly, graded_lex_monomials
from ..sdp import PsdFactor, SdpProblem, lmi_problem, psd_factor

logger = logging.getLogger(__name__)


@dataclass
class GramSystem:
    """Basis V(x), the B_α matrices and the target coefficients."""

    basis: List[Monomial]
    b_matrices: Dict[Monomial, np.ndarray]
    target: Poly
    uncovered: List[Monomial] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def monomials(self) -> List[Monomial]:
        return sorted(self.b_matrices)

    def rhs(self) -> np.ndarray:
        return np.array([self.target.coefficient(a) for a in self.monomials])

    def constraint_stack(self) -> np.ndarray:
        """B_α stacked in graded-lex order of α, shape (m, n, n)."""
        return np.stack([self.b_matrices[a] for a in self.monomials])

    def apply(self, omega: np.ndarray) -> Dict[Monomial, float]:
        """α ↦ tr(B_α Ω)."""
        return {a: float(np.sum(b * omega)) for a, b in self.b_matrices.items()}

    def residual(self, omega: np.ndarray) -> float:
        values = self.apply(omega)
        worst = max((abs(v - self.target.coefficient(a)) for a, v in values.items()), default=0.0)
        missing = max((abs(self.target.coefficient(a)) for a in self.uncovered), default=0.0)
        return max(worst, missing)

    def project(self, omega: np.ndarray) -> np.ndarray:
        """Closest symmetric matrix satisfying every trace constraint exactly.

        The B_α have disjoint supports, so the correction is one scalar per α.
        """
        out = 0.5 * (omega + omega.T)
        for a, b in self.b_matrices.items():
            shift = (self.target.coefficient(a) - float(np.sum(b * out))) / float(np.sum(b))
            out = out + shift * b
        return out

    def polynomial(self, omega: np.ndarray) -> Poly:
        """V(x)ᵀ Ω V(x)."""
        return Poly(self.target.num_vars, self.apply(omega))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'basis': [m.render() for m in self.basis],
            'size': self.size,
            'constraints': len(self.b_matrices),
            'target': self.target.render(),
        }


def _newton_polytope_filter(f: Poly, candidates: List[Monomial]) -> List[Monomial]:
    """Keep α with 2α in the convex hull of supp(f)."""
    support = f.exponent_matrix()
    k = support.shape[0]
    a_eq = np.vstack([support.T, np.ones((1, k))])
    kept = []
    for a in candidates:
        b_eq = np.concatenate([2.0 * np.array(a.exponents), [1.0]])
        res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method='highs')
        if res.status == 0:
            kept.append(a)
        elif res.status != 2:
            # LP trouble: keep the monomial rather than risk a wrong verdict
            logger.warning(f'Newton polytope test failed for {a}: {res.message}')
            kept.append(a)
    return kept


def build_gram_system(f: Poly, prune: bool = False,
                      basis: Optional[List[Monomial]] = None) -> GramSystem:
    """Gram system of ``f`` over the monomials of degree ≤ deg(f)/2.

    Args:
        f: target polynomial of even degree.
        prune: drop basis monomials outside half the Newton polytope of f.
        basis: explicit basis, overriding the default enumeration.

    Raises:
        OddDegreeError: deg f is odd (f cannot be a sum of squares).
    """
    degree = max(f.degree, 0)
    if basis is None:
        if degree % 2:
            raise OddDegreeError(degree)
        basis = graded_lex_monomials(f.num_vars, degree // 2)
        if prune and not f.is_zero():
            basis = _newton_polytope_filter(f, basis)
    elif any(m.num_vars != f.num_vars for m in basis):
        raise InputError('Basis monomials and polynomial have different variable counts')
    n = len(basis)
    b_matrices: Dict[Monomial, np.ndarray] = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            alpha = u * v
            if alpha not in b_matrices:
                b_matrices[alpha] = np.zeros((n, n))
            b_matrices[alpha][i, j] = 1.0
    uncovered = [a for a in f.monomials() if a not in b_matrices]
    logger.debug(f'Gram system: basis {n}, {len(b_matrices)} constraint monomials, '
                 f'{len(uncovered)} uncovered')
    return GramSystem(list(basis), b_matrices, f, uncovered)


def gram_sdp(system: GramSystem, margin: bool = True) -> SdpProblem:
    """Primal SDP for the Gram system.

    With ``margin`` the variable is X = Ω − tI and the free scalar t is
    maximized (``max t s.t. tr(B_α(X + tI)) = f_α``); otherwise it is the pure
    feasibility problem over Ω.
    """
    stack = system.constraint_stack()
    n = system.size
    if margin:
        traces = np.array([np.trace(b) for b in stack]).reshape(-1, 1)
        return SdpProblem((n,), [np.zeros((n, n))], [stack], system.rhs(),
                          free_c=np.array([-1.0]), free_a=traces)
    return SdpProblem((n,), [np.zeros((n, n))], [stack], system.rhs())


def gram_to_lmi(system: GramSystem) -> SdpProblem:
    """Gram feasibility as an LMI A_0 + Σ_i x_i A_i ⪰ 0 over free Gram parameters.

    A_0 is the minimum-norm particular solution of the trace constraints and
    the A_i span their null space; the result is a dual-form ``SdpProblem``.
    """
    n = system.size
    iu = np.triu_indices(n)
    rows = []
    for a in system.monomials:
        b = system.b_matrices[a]
        weights = np.where(iu[0] == iu[1], 1.0, 2.0)
        rows.append(b[iu] * weights)
    mat = np.array(rows)
    particular, *_ = np.linalg.lstsq(mat, system.rhs(), rcond=None)
    _, s, vt = np.linalg.svd(mat)
    rank = int(np.sum(s > 1e-12 * max(s[0], 1.0))) if s.size else 0
    null = vt[rank:]

    def to_matrix(vec: np.ndarray) -> np.ndarray:
        out = np.zeros((n, n))
        out[iu] = vec
        return out + np.triu(out, 1).T

    return lmi_problem([(to_matrix(particular), [to_matrix(v) for v in null])])


def extract_squares(omega: np.ndarray, system: GramSystem, tol: float = 1e-7) -> List[Poly]:
    """Squares q_j with Σ q_j² = V Ω Vᵀ from a pivoted LDLᵀ of Ω.

    Raises:
        InputError: Ω is indefinite beyond ``tol``.
    """
    factor: PsdFactor = psd_factor(omega, tol)
    if not factor.is_psd:
        raise InputError('Gram matrix is indefinite; no square decomposition')
    columns = factor.square_root()
    squares = []
    for j in range(columns.shape[1]):
        terms = {system.basis[i]: float(c) for i, c in enumerate(columns[:, j]) if c != 0.0}
        squares.append(Poly(system.target.num_vars, terms))
    return squares
