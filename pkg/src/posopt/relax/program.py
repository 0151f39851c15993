"""SOS programs over affine families of polynomials, and Lyapunov search."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..errors import DimensionError, InputError, NumericalError
from ..poly import Monomial, Poly, derive, graded_lex_monomials, poly_sum
from ..sdp import SdpProblem, Tolerances, is_usable, solve_sdp
from ..sos import SosCertificate, build_gram_system, extract_squares

logger = logging.getLogger(__name__)


@dataclass
class AffinePoly:
    """c ↦ constant + Σ_i c_i·coefficients[i]."""

    constant: Poly
    coefficients: List[Poly]

    def __call__(self, c: Sequence[float]) -> Poly:
        if len(c) != len(self.coefficients):
            raise DimensionError(f'Expected {len(self.coefficients)} parameters, got {len(c)}')
        return poly_sum([self.constant] + [ci * q for ci, q in zip(c, self.coefficients)],
                        self.constant.num_vars)

    @property
    def degree(self) -> int:
        return max([self.constant.degree] + [q.degree for q in self.coefficients])

    def support(self) -> Poly:
        """Polynomial with unit coefficients on every monomial any member can contain."""
        monos = set(self.constant.monomials())
        for q in self.coefficients:
            monos.update(q.monomials())
        return Poly(self.constant.num_vars, {m: 1.0 for m in monos})


@dataclass
class AffineFamily:
    num_params: int
    members: List[AffinePoly]

    def __post_init__(self):
        if any(len(m.coefficients) != self.num_params for m in self.members):
            raise DimensionError('Every member needs one coefficient polynomial per parameter')


@dataclass
class SosProgramResult:
    feasible: bool
    margin: float
    c: Optional[np.ndarray] = None
    certificates: Dict[int, SosCertificate] = field(default_factory=dict)
    status: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'feasible': self.feasible,
            'margin': self.margin,
            'c': None if self.c is None else self.c.tolist(),
            'certificates': {str(i): cert.to_dict() for i, cert in self.certificates.items()},
            'status': self.status,
        }


def _member_basis(member: AffinePoly) -> List[Monomial]:
    support = member.support()
    half = (max(member.degree, 0) + 1) // 2
    system = build_gram_system(support, prune=True, basis=None) if member.degree % 2 == 0 else None
    if system is not None:
        return system.basis
    return graded_lex_monomials(support.num_vars, half)


def sos_program(family: AffineFamily, psd_members: Optional[Sequence[int]] = None,
                tol: Optional[Tolerances] = None, margin_cap: float = 1.0) -> SosProgramResult:
    """Find c making each designated member SOS.

    Maximizes the common margin t (Ω_j − tI ⪰ 0 for every member, t ≤ ``margin_cap``);
    the family is feasible iff t* ≥ −tol.
    """
    tol = tol or Tolerances()
    indices = list(range(len(family.members))) if psd_members is None else list(psd_members)
    if not indices:
        raise InputError('No members designated SOS')
    p = family.num_params
    sizes = []
    layouts = []
    for j in indices:
        member = family.members[j]
        basis = _member_basis(member)
        system = build_gram_system(member.support(), basis=basis)
        monos = sorted(set(system.monomials) | set(member.support().monomials()))
        layouts.append((j, basis, monos, system))
        sizes.append(len(basis))
    total_rows = sum(len(lay[2]) for lay in layouts) + 1
    a_blocks = [np.zeros((total_rows, n, n)) for n in sizes] + [np.zeros((total_rows, 1, 1))]
    free_a = np.zeros((total_rows, p + 1))
    b = np.zeros(total_rows)
    row = 0
    for block, (j, basis, monos, system) in enumerate(layouts):
        member = family.members[j]
        for alpha in monos:
            if alpha in system.b_matrices:
                a_blocks[block][row] = system.b_matrices[alpha]
                free_a[row, p] = float(np.trace(system.b_matrices[alpha]))
            for i, q in enumerate(member.coefficients):
                free_a[row, i] = -q.coefficient(alpha)
            b[row] = member.constant.coefficient(alpha)
            row += 1
    # t + s = margin_cap with s ≥ 0
    a_blocks[-1][row, 0, 0] = 1.0
    free_a[row, p] = 1.0
    b[row] = margin_cap
    sizes.append(1)
    c_blocks = [np.zeros((n, n)) for n in sizes]
    free_c = np.zeros(p + 1)
    free_c[p] = -1.0
    problem = SdpProblem(tuple(sizes), c_blocks, a_blocks, b, free_c=free_c, free_a=free_a)
    solution = solve_sdp(problem, tol)
    if not is_usable(solution, tol):
        raise NumericalError(f'SOS program failed with status {solution.status}', solution.status)

    margin = float(solution.free[p])
    c = solution.free[:p].copy()
    scale = 1.0 + max(m.constant.coeff_norm() for m in family.members)
    if margin < -10.0 * tol.feas_tol * scale:
        logger.info(f'SOS program infeasible: margin {margin:.3e}')
        return SosProgramResult(False, margin, status=solution.status)

    certificates = {}
    for block, (j, basis, monos, _) in enumerate(layouts):
        target = family.members[j](c)
        system = build_gram_system(target, basis=basis)
        gram = system.project(solution.x_blocks[block] + max(margin, 0.0) * np.eye(len(basis)))
        squares = extract_squares(gram, system, tol.rank_tol)
        total = poly_sum((q * q for q in squares), target.num_vars)
        certificates[j] = SosCertificate(gram, squares, (total - target).coeff_norm(), basis)
    logger.info(f'SOS program feasible: margin {margin:.3e}, c = {np.round(c, 6).tolist()}')
    return SosProgramResult(True, margin, c, certificates, solution.status)


@dataclass
class LyapunovResult:
    feasible: bool
    V: Optional[Poly]
    program: SosProgramResult

    def to_dict(self) -> Dict[str, Any]:
        return {
            'feasible': self.feasible,
            'V': None if self.V is None else self.V.render(),
            'program': self.program.to_dict(),
        }


def lyapunov_search(vector_field: Sequence[Poly], degree: int = 2, eps: float = 1e-3,
                    tol: Optional[Tolerances] = None) -> LyapunovResult:
    """Search V with V(0) = 0, V − ε|x|² SOS and −∇V·a SOS for dx/dt = a(x)."""
    if degree < 2 or degree % 2:
        raise InputError('Lyapunov degree must be even and at least 2')
    g = len(vector_field)
    if any(a.num_vars != g for a in vector_field):
        raise DimensionError('Vector field needs one component per variable')
    monos = graded_lex_monomials(g, degree, 2)
    basis_polys = [Poly.monomial(m) for m in monos]
    norm_sq = poly_sum((Poly.variable(g, i + 1) ** 2 for i in range(g)), g)
    positivity = AffinePoly(-eps * norm_sq, basis_polys)
    decrease = AffinePoly(
        Poly.zero(g),
        [-poly_sum((derive(v, i + 1) * vector_field[i] for i in range(g)), g) for v in basis_polys],
    )
    family = AffineFamily(len(monos), [positivity, decrease])
    result = sos_program(family, tol=tol)
    if not result.feasible or result.c is None:
        return LyapunovResult(False, None, result)
    V = Poly(g, {m: float(ci) for m, ci in zip(monos, result.c)})
    return LyapunovResult(True, V, result)
