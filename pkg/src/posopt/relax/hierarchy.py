"""Moment / SOS relaxations for global and constrained polynomial minimization.

One SDP covers both sides. Its primal is the SOS side

    max λ  s.t.  f − λ = Σ_i s_i·m_i,  s_i = V_i Ω_i V_iᵀ,  Ω_i ⪰ 0

with m_0 = 1 and m_i the constraints (or their products in preorder mode);
its dual variables, negated, are the moments ŷ with ŷ_0 = 1, moment matrix
M_k(ŷ) ⪰ 0 and localizing matrices M(m_i ŷ) ⪰ 0.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import NumericalError, SizingError
from ..moments import MomentSequence, moment_matrix
from ..poly import Monomial, Poly, coefficient_residual, graded_lex_monomials, poly_sum
from ..sdp import (
    DUAL_INFEASIBLE,
    PRIMAL_INFEASIBLE,
    SdpProblem,
    SdpSolution,
    Tolerances,
    is_usable,
    numerical_rank,
    solve_sdp,
)
from ..sos import sos_check
from .problem import (
    INFEASIBLE_DUAL,
    NUMERICAL,
    OPTIMAL,
    PREORDER,
    UNBOUNDED,
    RelaxationProblem,
    RelaxationResult,
)
from .saddle import SADDLE_TOL, certify_saddle, saddle_scale

logger = logging.getLogger(__name__)

MAX_PREORDER_TERMS = 64

# (gap_tol, feas_tol, extra iterations) of the re-solves tried while saddle residuals are too large
_REFINEMENTS = ((1e-10, 1e-10, 100), (1e-12, 1e-11, 200))


@dataclass
class _Block:
    product: Poly
    basis: List[Monomial]


def ball_constant(constraints: List[Poly]) -> float:
    """Default C in the archimedean constraint C − Σx_i² ≥ 0."""
    return 1.0 + max((p.coeff_norm() for p in constraints), default=0.0)


def _products(problem: RelaxationProblem) -> List[Poly]:
    g = problem.num_vars
    constraints = list(problem.constraints)
    if problem.ball is not False:
        c = ball_constant(problem.constraints) if problem.ball is True else float(problem.ball)
        squares = poly_sum((Poly.variable(g, i + 1) ** 2 for i in range(g)), g)
        constraints.append(Poly.constant(g, c) - squares)
    if problem.mode != PREORDER:
        return constraints
    if 2 ** len(constraints) > MAX_PREORDER_TERMS:
        raise SizingError(f'Preorder with {len(constraints)} constraints needs '
                          f'{2 ** len(constraints)} products (cap {MAX_PREORDER_TERMS})')
    products = []
    for size in range(1, len(constraints) + 1):
        for subset in itertools.combinations(constraints, size):
            prod = Poly.constant(g, 1.0)
            for p in subset:
                prod = prod * p
            products.append(prod)
    return products


def _blocks(problem: RelaxationProblem) -> List[_Block]:
    g, k = problem.num_vars, problem.order
    blocks = [_Block(Poly.constant(g, 1.0), graded_lex_monomials(g, k))]
    for prod in _products(problem):
        if prod.degree > 2 * k:
            logger.debug(f'Skipping product of degree {prod.degree} above 2k={2 * k}')
            continue
        blocks.append(_Block(prod, graded_lex_monomials(g, (2 * k - max(prod.degree, 0)) // 2)))
    return blocks


def _build_sdp(f: Poly, blocks: List[_Block], order: int) -> Tuple[SdpProblem, List[Monomial]]:
    g = f.num_vars
    monos = graded_lex_monomials(g, 2 * order)
    row = {m: i for i, m in enumerate(monos)}
    m = len(monos)
    a_blocks = []
    for block in blocks:
        n = len(block.basis)
        a = np.zeros((m, n, n))
        for i, u in enumerate(block.basis):
            for j, v in enumerate(block.basis):
                uv = u * v
                for gamma, coeff in block.product.items():
                    a[row[uv * gamma], i, j] += coeff
        a_blocks.append(a)
    free_a = np.zeros((m, 1))
    free_a[row[Monomial.one(g)], 0] = 1.0
    b = np.array([f.coefficient(a) for a in monos])
    problem = SdpProblem(tuple(len(bl.basis) for bl in blocks),
                         [np.zeros((len(bl.basis),) * 2) for bl in blocks], a_blocks, b,
                         free_c=np.array([-1.0]), free_a=free_a)
    return problem, monos


def _square_poly(gram: np.ndarray, basis: List[Monomial], num_vars: int) -> Poly:
    terms: Dict[Monomial, float] = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            terms[u * v] = terms.get(u * v, 0.0) + float(gram[i, j])
    return Poly(num_vars, terms)


def _extract_minimizer(moments: MomentSequence, order: int,
                       rank_tol: float) -> Tuple[int, Optional[np.ndarray]]:
    mat = moment_matrix(moments, order).matrix
    rank = numerical_rank(mat, rank_tol)
    if rank != 1:
        return rank, None
    g = moments.num_vars
    return rank, np.array([moments.value(Monomial.unit(g, i)) for i in range(g)])


def _relaxation_result(problem: RelaxationProblem, blocks: List[_Block], monos: List[Monomial],
                       solution: SdpSolution, tol: Tolerances) -> RelaxationResult:
    f = problem.objective
    g = problem.num_vars
    bound = float(solution.free[0])
    moments = MomentSequence.multivariate(g, {a: -float(v) for a, v in zip(monos, solution.y)})
    grams = [0.5 * (x + x.T) for x in solution.x_blocks]
    multipliers = [_square_poly(gr, bl.basis, g) for gr, bl in zip(grams, blocks)]
    total = poly_sum((s * bl.product for s, bl in zip(multipliers, blocks)), g)
    residual = coefficient_residual(total + bound, f)

    rank, candidate = _extract_minimizer(moments, problem.order, tol.rank_tol)
    lagrange = [float(s(candidate)) for s in multipliers[1:]] if candidate is not None else []
    diagnostics = {'sdp_status': solution.status, 'iterations': solution.iterations,
                   'blocks': [len(bl.basis) for bl in blocks]}
    result = RelaxationResult(
        bound, OPTIMAL, problem, moments=moments, grams=grams,
        bases=[bl.basis for bl in blocks], products=[bl.product for bl in blocks],
        multipliers=multipliers, gap=solution.gap, minimizer_candidate=candidate,
        lagrange=lagrange, certificate_residual=residual, moment_rank=rank, diagnostics=diagnostics,
    )
    diagnostics.update(certify_saddle(result))
    return result


def _saddle_excess(result: RelaxationResult) -> float:
    """Largest saddle residual in units of SADDLE_TOL·scale; at most 1 when acceptable."""
    worst = max(result.diagnostics['complementarity_residual'],
                result.diagnostics['balanced_residual'])
    return worst / (SADDLE_TOL * saddle_scale(result))


def _solve(problem: RelaxationProblem, tol: Tolerances) -> RelaxationResult:
    blocks = _blocks(problem)
    sdp, monos = _build_sdp(problem.objective, blocks, problem.order)
    solution: SdpSolution = solve_sdp(sdp, tol)
    diagnostics = {'sdp_status': solution.status, 'iterations': solution.iterations,
                   'blocks': [len(bl.basis) for bl in blocks]}

    if solution.status == PRIMAL_INFEASIBLE:
        # no λ makes f − λ a certificate of this order
        logger.info(f'Relaxation order {problem.order}: SOS side infeasible')
        return RelaxationResult(-np.inf, INFEASIBLE_DUAL, problem, diagnostics=diagnostics)
    if solution.status == DUAL_INFEASIBLE:
        logger.info(f'Relaxation order {problem.order}: '
                    'moment side infeasible (empty feasible set)')
        return RelaxationResult(np.inf, UNBOUNDED, problem, diagnostics=diagnostics)
    if not is_usable(solution, tol):
        raise NumericalError(f'Relaxation SDP failed with status {solution.status}',
                             solution.status)

    result = _relaxation_result(problem, blocks, monos, solution, tol)
    refinements = 0
    for gap_tol, feas_tol, extra_iter in _REFINEMENTS:
        if _saddle_excess(result) <= 1.0:
            break
        refinements += 1
        logger.info(f'Relaxation order {problem.order}: complementarity '
                    f'{result.diagnostics["complementarity_residual"]:.2e}, re-solving with '
                    f'gap_tol={gap_tol:.0e}')
        tighter = tol.with_changes(gap_tol=min(tol.gap_tol, gap_tol),
                                   feas_tol=min(tol.feas_tol, feas_tol),
                                   max_iter=tol.max_iter + extra_iter)
        try:
            refined = solve_sdp(sdp, tighter)
        except NumericalError as exc:
            logger.warning(f'Refinement {refinements} failed: {exc}')
            break
        if not is_usable(refined, tol):
            continue
        candidate = _relaxation_result(problem, blocks, monos, refined, tol)
        if _saddle_excess(candidate) < _saddle_excess(result):
            result = candidate
    result.diagnostics['refinements'] = refinements

    if _saddle_excess(result) > 1.0:
        result.status = NUMERICAL
        logger.warning(f'Relaxation order {problem.order}: saddle residuals '
                       f'{result.diagnostics["complementarity_residual"]:.2e} / '
                       f'{result.diagnostics["balanced_residual"]:.2e} exceed '
                       f'{SADDLE_TOL:.0e}·scale, reporting {NUMERICAL}')
    logger.info(f'Relaxation order {problem.order}: bound {result.lower_bound:.10g}, '
                f'moment rank {result.moment_rank}')
    return result


def minimize_global(f: Poly, k: Optional[int] = None,
                    tol: Optional[Tolerances] = None) -> RelaxationResult:
    """Unconstrained relaxation of order k (default ⌈deg f / 2⌉)."""
    k = max(1, (f.degree + 1) // 2) if k is None else k
    return _solve(RelaxationProblem(f, [], k), tol or Tolerances())


def minimize_constrained(problem: RelaxationProblem,
                         tol: Optional[Tolerances] = None) -> RelaxationResult:
    """Relaxation over {p_i ≥ 0} in quadratic-module or preorder mode."""
    return _solve(problem, tol or Tolerances())


def cube_bound(f: Poly, k: Optional[int] = None,
               tol: Optional[Tolerances] = None) -> RelaxationResult:
    """Minimization over the cube [−1, 1]^g via the constraints 1 − x_i² ≥ 0."""
    g = f.num_vars
    cube = [Poly.constant(g, 1.0) - Poly.variable(g, i + 1) ** 2 for i in range(g)]
    k = max(1, (f.degree + 1) // 2) if k is None else k
    return _solve(RelaxationProblem(f, cube, k), tol or Tolerances())


def bisect_bound(f: Poly, lo: float, hi: float, precision: float = 1e-6,
                 tol: Optional[Tolerances] = None, max_steps: int = 200) -> Dict[str, float]:
    """Largest λ in [lo, hi] (to ``precision``) with f − λ SOS.

    Returns ``{'bound', 'lo', 'hi', 'steps'}``; ``bound`` is −inf when f − lo is
    not SOS.
    """
    tol = tol or Tolerances()
    one = Poly.constant(f.num_vars, 1.0)

    def certified(lam: float) -> bool:
        return sos_check(f - lam * one, tol).is_sos

    if not certified(lo):
        return {'bound': -np.inf, 'lo': lo, 'hi': hi, 'steps': 0}
    if certified(hi):
        return {'bound': hi, 'lo': hi, 'hi': hi, 'steps': 0}
    steps = 0
    while hi - lo > precision and steps < max_steps:
        mid = 0.5 * (lo + hi)
        if certified(mid):
            lo = mid
        else:
            hi = mid
        steps += 1
    logger.info(f'bisect_bound: {lo:.10g} after {steps} steps')
    return {'bound': lo, 'lo': lo, 'hi': hi, 'steps': steps}
