"""Primal-dual interior-point solver for dense block SDPs.

Infeasible-start Mehrotra predictor-corrector with Nesterov-Todd scaling. The
iteration starts from scaled identities X₀ = ξI, S₀ = ηI, y₀ = 0 and works on the
original data; there is no big-M augmentation or self-dual embedding.
Free scalar variables are eliminated against a pivoted QR factor of their
constraint columns and linearly dependent equality rows are dropped before the
iteration starts.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy import linalg

from ..errors import NumericalError
from .problem import (
    DUAL_INFEASIBLE,
    OPTIMAL,
    PRIMAL_INFEASIBLE,
    SLOW_PROGRESS,
    SdpProblem,
    SdpSolution,
    symmetrize,
)
from .tolerances import Tolerances

logger = logging.getLogger(__name__)

_STALL_STEP = 1e-10
_STALL_LIMIT = 3


@dataclass
class _FreeElimination:
    """Row space split induced by F = Q [G; 0]: y = Q2 ỹ + w, u = G⁺ Q1ᵀ (b − A(X))."""

    reduced: SdpProblem
    q1: np.ndarray
    q2: np.ndarray
    g: np.ndarray
    w: np.ndarray
    unbounded_direction: Optional[np.ndarray] = None

    @classmethod
    def build(cls, problem: SdpProblem, tol: Tolerances) -> '_FreeElimination':
        m, f = problem.num_constraints, problem.num_free
        if f == 0:
            return cls(problem, np.zeros((m, 0)), np.eye(m), np.zeros((0, 0)), np.zeros(m))

        q, r, piv = linalg.qr(problem.free_a, pivoting=True)
        diag = np.abs(np.diag(r))
        if diag.size == 0 or diag[0] == 0.0:
            rank = 0
        else:
            rank = int(np.sum(diag > 1e-12 * max(m, f) * diag[0]))
        g = np.zeros((rank, f))
        g[:, piv] = r[:rank, :]
        q1, q2 = q[:, :rank], q[:, rank:]

        z = np.linalg.lstsq(g.T, problem.free_c, rcond=None)[0] if rank else np.zeros(0)
        mismatch = g.T @ z - problem.free_c
        if np.linalg.norm(mismatch) > tol.feas_tol * (1.0 + np.linalg.norm(problem.free_c)):
            # mismatch lies in null(F) and has cᵀ·mismatch = −‖mismatch‖²
            direction = mismatch / float(mismatch @ mismatch)
            return cls(problem, q1, q2, g, np.zeros(m), unbounded_direction=direction)

        w = q1 @ z
        c_red = [symmetrize(c - aw) for c, aw in zip(problem.c_blocks, problem.adjoint(w))]
        a_red = [np.einsum('ki,kjl->ijl', q2, a) for a in problem.a_blocks]
        reduced = SdpProblem(problem.block_sizes, c_red, a_red, q2.T @ problem.b)
        logger.debug(f'Eliminated {f} free variables (rank {rank}), '
                     f'{reduced.num_constraints} rows left')
        return cls(reduced, q1, q2, g, w)

    def lift_y(self, y_reduced: np.ndarray) -> np.ndarray:
        return self.q2 @ y_reduced + self.w

    def lift_ray(self, y_reduced: np.ndarray) -> np.ndarray:
        return self.q2 @ y_reduced

    def free_values(
        self,
        problem: SdpProblem,
        x_blocks: Sequence[np.ndarray],
        rhs: Optional[np.ndarray] = None,
    ) -> np.ndarray:
        if problem.num_free == 0:
            return np.zeros(0)
        target = problem.b if rhs is None else rhs
        v = self.q1.T @ (target - problem.apply(x_blocks))
        if self.g.shape[0] == 0:
            return np.zeros(problem.num_free)
        return np.linalg.lstsq(self.g, v, rcond=None)[0]


@dataclass
class _IndependentRows:
    """Maximal linearly independent subset of the equality rows."""

    problem: SdpProblem
    keep: np.ndarray
    num_rows: int
    inconsistency: Optional[np.ndarray] = None

    @classmethod
    def build(cls, problem: SdpProblem, tol: Tolerances) -> '_IndependentRows':
        m = problem.num_constraints
        if m == 0:
            return cls(problem, np.arange(0), 0)
        avec = np.hstack([a.reshape(m, -1) for a in problem.a_blocks])
        _, r, piv = linalg.qr(avec.T, mode='economic', pivoting=True)
        diag = np.abs(np.diag(r))
        if diag.size == 0 or diag[0] == 0.0:
            rank = 0
        else:
            rank = int(np.sum(diag > 1e-10 * diag[0]))
        keep = np.sort(piv[:rank])
        drop = np.setdiff1d(np.arange(m), keep)
        if drop.size == 0:
            return cls(problem, keep, m)

        b = problem.b
        if rank:
            transfer = np.linalg.lstsq(avec[keep].T, avec[drop].T, rcond=None)[0].T
        else:
            transfer = np.zeros((drop.size, 0))
        mismatch = b[drop] - transfer @ b[keep]
        if np.abs(mismatch).max() > tol.feas_tol * (1.0 + np.linalg.norm(b)):
            k = int(np.argmax(np.abs(mismatch)))
            y = np.zeros(m)
            y[drop[k]] = 1.0
            y[keep] = -transfer[k]
            y /= mismatch[k]
            logger.info(f'Equality constraints are inconsistent (row {int(drop[k])})')
            return cls(problem, keep, m, inconsistency=y)

        logger.debug(f'Dropped {drop.size} linearly dependent constraint rows')
        sub = SdpProblem(
            problem.block_sizes,
            problem.c_blocks,
            [a[keep] for a in problem.a_blocks],
            b[keep],
        )
        return cls(sub, keep, m)

    def lift(self, y_sub: np.ndarray) -> np.ndarray:
        y = np.zeros(self.num_rows)
        y[self.keep] = y_sub
        return y


@dataclass
class _Scaling:
    """Nesterov-Todd scaling: X = G D Gᵀ, S = G⁻ᵀ D G⁻¹, W = G Gᵀ, W S W = X."""

    g: np.ndarray
    g_inv: np.ndarray
    d: np.ndarray
    w: np.ndarray


def _nt_scaling(x: np.ndarray, s: np.ndarray) -> _Scaling:
    lx = linalg.cholesky(x, lower=True)
    ls = linalg.cholesky(s, lower=True)
    _, sv, vt = linalg.svd(ls.T @ lx)
    if sv[-1] <= 0.0:
        raise np.linalg.LinAlgError('singular scaling point')
    root = np.sqrt(sv)
    g = (lx @ vt.T) / root
    lx_inv = linalg.solve_triangular(lx, np.eye(x.shape[0]), lower=True)
    g_inv = (root[:, None] * vt) @ lx_inv
    return _Scaling(g, g_inv, sv, g @ g.T)


def _max_step(d: np.ndarray, scaled_dir: np.ndarray) -> float:
    """Largest α with D + α·Δ ⪰ 0 for diagonal positive D."""
    root = np.sqrt(d)
    lam = np.linalg.eigvalsh(symmetrize(scaled_dir / np.outer(root, root)))[0]
    return np.inf if lam >= 0.0 else -1.0 / lam


def _starting_point(problem: SdpProblem):
    """Per-block X₀ = ξI, S₀ = ηI used in place of a big-M augmented start.

    ξ = max(10, √n, √n·max_k (1 + |b_k|) / (1 + ‖A_k‖)) and
    η = max(10, √n, ‖C‖, max_k ‖A_k‖).
    """
    x0, s0 = [], []
    b = problem.b
    for n, c, a in zip(problem.block_sizes, problem.c_blocks, problem.a_blocks):
        root = np.sqrt(n)
        a_norms = np.linalg.norm(a.reshape(a.shape[0], -1), axis=1) if a.shape[0] else np.zeros(0)
        xi = max(10.0, root)
        if a_norms.size:
            xi = max(xi, root * float(np.max((1.0 + np.abs(b)) / (1.0 + a_norms))))
        eta = max(10.0, root, float(np.linalg.norm(c)), float(a_norms.max(initial=0.0)))
        x0.append(xi * np.eye(n))
        s0.append(eta * np.eye(n))
    return x0, s0


def _schur_solver(problem: SdpProblem,
                  scalings: List[_Scaling]) -> Callable[[np.ndarray], np.ndarray]:
    """Factor M_ij = Σ_b tr(A_ib W_b A_jb W_b) and return a solve closure."""
    m = problem.num_constraints
    if m == 0:
        return lambda rhs: np.zeros(0)
    schur = np.zeros((m, m))
    for sc, a in zip(scalings, problem.a_blocks):
        waw = np.einsum('ij,kjl,lm->kim', sc.w, a, sc.w, optimize=True)
        schur += np.einsum('kij,lij->kl', a, waw)
    schur = symmetrize(schur)
    try:
        factor = linalg.cho_factor(schur)
        return lambda rhs: linalg.cho_solve(factor, rhs)
    except linalg.LinAlgError:
        logger.warning('Schur complement matrix not positive definite, using least squares')
        return lambda rhs: np.linalg.lstsq(schur, rhs, rcond=None)[0]


@dataclass
class _Iterate:
    x: List[np.ndarray]
    y: np.ndarray
    s: List[np.ndarray]
    iteration: int
    p_inf: float
    d_inf: float
    gap: float

    @property
    def merit(self) -> float:
        return max(self.p_inf, self.d_inf, self.gap)


@dataclass
class _CoreResult:
    status: str
    iterate: _Iterate
    ray_y: Optional[np.ndarray] = None
    ray_x: Optional[List[np.ndarray]] = None


def _primal_ray(problem: SdpProblem, y: np.ndarray, aty: List[np.ndarray],
                tol: Tolerances) -> Optional[np.ndarray]:
    by = problem.dual_objective(y)
    if by <= 0.0:
        return None
    ray_mats = [-a / by for a in aty]
    size = float(np.sqrt(sum(np.sum(r * r) for r in ray_mats)))
    violation = max(0.0, -min(np.linalg.eigvalsh(r)[0] for r in ray_mats))
    if violation <= tol.infeas_tol * size:
        return y / by
    return None


def _dual_ray(problem: SdpProblem, x: List[np.ndarray], atx: np.ndarray, pobj: float,
              a_norm: float, tol: Tolerances) -> Optional[List[np.ndarray]]:
    if pobj >= 0.0:
        return None
    scale = -pobj
    residual = float(np.linalg.norm(atx)) / scale
    x_norm = float(np.sqrt(sum(np.sum(xb * xb) for xb in x))) / scale
    if residual <= tol.infeas_tol * max(1.0, a_norm * x_norm):
        return [xb / scale for xb in x]
    return None


def _interior_point(problem: SdpProblem, tol: Tolerances) -> _CoreResult:
    b = problem.b
    n_total = problem.total_dimension
    b_norm = float(np.linalg.norm(b))
    c_norm = float(np.sqrt(sum(np.sum(c * c) for c in problem.c_blocks)))
    a_norm = float(np.sqrt(sum(np.sum(a * a) for a in problem.a_blocks)))

    x, s = _starting_point(problem)
    y = np.zeros(problem.num_constraints)
    best: Optional[_Iterate] = None
    stalls = 0

    for iteration in range(tol.max_iter + 1):
        atx = problem.apply(x)
        aty = problem.adjoint(y)
        rp = b - atx
        rd = [symmetrize(c - ay - sb) for c, ay, sb in zip(problem.c_blocks, aty, s)]
        pobj = problem.primal_objective(x)
        dobj = problem.dual_objective(y)
        xs = sum(float(np.sum(xb * sb)) for xb, sb in zip(x, s))
        mu = xs / n_total
        scale = 1.0 + abs(pobj) + abs(dobj)
        current = _Iterate(
            [xb.copy() for xb in x], y.copy(), [sb.copy() for sb in s], iteration,
            float(np.linalg.norm(rp)) / (1.0 + b_norm),
            float(np.sqrt(sum(np.sum(r * r) for r in rd))) / (1.0 + c_norm),
            max(abs(pobj - dobj), abs(xs)) / scale,
        )
        logger.debug(
            f'iter {iteration:3d} pobj={pobj:+.8e} dobj={dobj:+.8e} '
            f'pinf={current.p_inf:.2e} dinf={current.d_inf:.2e} gap={current.gap:.2e}'
        )
        if best is None or current.merit < best.merit:
            best = current

        if (current.p_inf <= tol.feas_tol and current.d_inf <= tol.feas_tol
                and current.gap <= tol.gap_tol):
            return _CoreResult(OPTIMAL, current)
        ray_y = _primal_ray(problem, y, aty, tol)
        if ray_y is not None:
            return _CoreResult(PRIMAL_INFEASIBLE, current, ray_y=ray_y)
        ray_x = _dual_ray(problem, x, atx, pobj, a_norm, tol)
        if ray_x is not None:
            return _CoreResult(DUAL_INFEASIBLE, current, ray_x=ray_x)
        if iteration == tol.max_iter:
            break

        try:
            scalings = [_nt_scaling(xb, sb) for xb, sb in zip(x, s)]
            solve = _schur_solver(problem, scalings)
        except (np.linalg.LinAlgError, linalg.LinAlgError) as exc:
            logger.warning(f'Scaling breakdown at iteration {iteration}: {exc}')
            break

        def direction(rc_blocks):
            rcbar = [sc.g @ (rc / np.add.outer(sc.d, sc.d)) @ sc.g.T
                     for sc, rc in zip(scalings, rc_blocks)]
            wrdw = [sc.w @ r @ sc.w for sc, r in zip(scalings, rd)]
            rhs = rp - problem.apply([p - q for p, q in zip(rcbar, wrdw)])
            dy = solve(rhs)
            ds = [symmetrize(r - ad) for r, ad in zip(rd, problem.adjoint(dy))]
            dx = [symmetrize(p - sc.w @ dsb @ sc.w) for p, sc, dsb in zip(rcbar, scalings, ds)]
            return dx, dy, ds

        def step_lengths(dx, ds, fraction):
            dxt = [sc.g_inv @ d @ sc.g_inv.T for sc, d in zip(scalings, dx)]
            dst = [sc.g.T @ d @ sc.g for sc, d in zip(scalings, ds)]
            ap = min(_max_step(sc.d, t) for sc, t in zip(scalings, dxt))
            ad = min(_max_step(sc.d, t) for sc, t in zip(scalings, dst))
            return min(1.0, fraction * ap), min(1.0, fraction * ad), dxt, dst

        # predictor
        rc_aff = [-2.0 * np.diag(sc.d ** 2) for sc in scalings]
        dx_a, dy_a, ds_a = direction(rc_aff)
        ap_a, ad_a, dxt_a, dst_a = step_lengths(dx_a, ds_a, 1.0)
        mu_aff = sum(
            float(np.sum((xb + ap_a * d1) * (sb + ad_a * d2)))
            for xb, d1, sb, d2 in zip(x, dx_a, s, ds_a)
        ) / n_total
        sigma = float(np.clip((max(mu_aff, 0.0) / mu) ** 3, 0.0, 1.0)) if mu > 0 else 0.0

        # corrector
        rc = [
            2.0 * sigma * mu * np.eye(len(sc.d)) - 2.0 * np.diag(sc.d ** 2) - (p @ q + q @ p)
            for sc, p, q in zip(scalings, dxt_a, dst_a)
        ]
        dx, dy, ds = direction(rc)
        ap, ad, _, _ = step_lengths(dx, ds, tol.step_fraction)

        x = [symmetrize(xb + ap * d) for xb, d in zip(x, dx)]
        y = y + ad * dy
        s = [symmetrize(sb + ad * d) for sb, d in zip(s, ds)]

        if min(ap, ad) < _STALL_STEP:
            stalls += 1
            if stalls >= _STALL_LIMIT:
                logger.warning(f'Step lengths stalled at iteration {iteration}')
                break
        else:
            stalls = 0

    return _CoreResult(SLOW_PROGRESS, best)


def primal_ray_violation(problem: SdpProblem, y: np.ndarray) -> float:
    """Defect of y as a primal-infeasibility ray (−Aᵀy ⪰ 0, Fᵀy = 0, bᵀy = 1)."""
    eig_part = max(0.0, -min(np.linalg.eigvalsh(-a)[0] for a in problem.adjoint(y)))
    free_part = float(np.abs(problem.free_a.T @ y).max(initial=0.0))
    return max(eig_part, free_part, abs(problem.dual_objective(y) - 1.0))


def dual_ray_violation(problem: SdpProblem, x_blocks: Sequence[np.ndarray],
                       free: np.ndarray) -> float:
    """Defect of (X, u) as a dual-infeasibility ray.

    A ray has A(X) + Fu = 0, X ⪰ 0 and ⟨C,X⟩ + cᵀu = −1.
    """
    eq = problem.apply(x_blocks) + (problem.free_a @ free if problem.num_free else 0.0)
    eig_part = max(0.0, -min(np.linalg.eigvalsh(xb)[0] for xb in x_blocks))
    objective = problem.primal_objective(x_blocks, free)
    return max(float(np.abs(eq).max(initial=0.0)), eig_part, abs(objective + 1.0))


def _residuals(problem: SdpProblem, x, y, s, free):
    primal = problem.apply(x) - problem.b
    if problem.num_free:
        primal = primal + problem.free_a @ free
    p_res = float(np.linalg.norm(primal)) / (1.0 + np.linalg.norm(problem.b))
    d_blocks = [c - ay - sb for c, ay, sb in zip(problem.c_blocks, problem.adjoint(y), s)]
    d_res = float(np.sqrt(sum(np.sum(d * d) for d in d_blocks)))
    if problem.num_free:
        d_res = max(d_res, float(np.linalg.norm(problem.free_a.T @ y - problem.free_c)))
    c_norm = float(np.sqrt(sum(np.sum(c * c) for c in problem.c_blocks)))
    return p_res, d_res / (1.0 + c_norm)


def solve_sdp(problem: SdpProblem, tol: Optional[Tolerances] = None) -> SdpSolution:
    """Solve a standard-form block SDP.

    Args:
        problem: the SDP data.
        tol: tolerances; ``Tolerances()`` defaults when omitted.

    Returns:
        SdpSolution. Infeasible statuses carry a verified improving ray in
        ``certificate``; ``slow_progress`` returns the best iterate seen.
    """
    tol = tol or Tolerances()
    problem.validate()
    zeros_x = [np.zeros((n, n)) for n in problem.block_sizes]

    elimination = _FreeElimination.build(problem, tol)
    if elimination.unbounded_direction is not None:
        direction = elimination.unbounded_direction
        logger.info('Free-variable cost has a component outside the row space: dual infeasible')
        return SdpSolution(
            DUAL_INFEASIBLE, zeros_x, np.zeros(problem.num_constraints),
            [c.copy() for c in problem.c_blocks], direction, -np.inf, -np.inf, 0,
            certificate={
                'kind': 'dual_infeasible',
                'x_blocks': zeros_x,
                'free': direction,
                'violation': dual_ray_violation(problem, zeros_x, direction),
            },
        )

    rows = _IndependentRows.build(elimination.reduced, tol)
    if rows.inconsistency is not None:
        y_ray = elimination.lift_ray(rows.inconsistency)
        return SdpSolution(
            PRIMAL_INFEASIBLE, zeros_x, y_ray, [c.copy() for c in problem.c_blocks],
            np.zeros(problem.num_free), np.inf, np.inf, 0,
            certificate={
                'kind': 'primal_infeasible',
                'y': y_ray,
                'violation': primal_ray_violation(problem, y_ray),
            },
        )

    try:
        core = _interior_point(rows.problem, tol)
    except FloatingPointError as exc:
        raise NumericalError(f'SDP iteration overflowed: {exc}') from exc
    it = core.iterate

    if core.status == PRIMAL_INFEASIBLE:
        y_ray = elimination.lift_ray(rows.lift(core.ray_y))
        violation = primal_ray_violation(problem, y_ray)
        logger.info(f'SDP primal infeasible after {it.iteration} iterations '
                    f'(ray violation {violation:.2e})')
        return SdpSolution(
            PRIMAL_INFEASIBLE, it.x, y_ray, it.s, np.zeros(problem.num_free),
            np.inf, np.inf, it.iteration, it.p_inf, it.d_inf, it.gap,
            certificate={'kind': 'primal_infeasible', 'y': y_ray, 'violation': violation},
        )

    if core.status == DUAL_INFEASIBLE:
        ray_x = core.ray_x
        ray_free = elimination.free_values(problem, ray_x, rhs=np.zeros(problem.num_constraints))
        violation = dual_ray_violation(problem, ray_x, ray_free)
        logger.info(f'SDP dual infeasible after {it.iteration} iterations '
                    f'(ray violation {violation:.2e})')
        return SdpSolution(
            DUAL_INFEASIBLE, it.x, elimination.lift_y(rows.lift(it.y)), it.s,
            np.zeros(problem.num_free), -np.inf, -np.inf, it.iteration, it.p_inf, it.d_inf, it.gap,
            certificate={'kind': 'dual_infeasible', 'x_blocks': ray_x, 'free': ray_free,
                         'violation': violation},
        )

    y = elimination.lift_y(rows.lift(it.y))
    free = elimination.free_values(problem, it.x)
    pobj = problem.primal_objective(it.x, free)
    dobj = problem.dual_objective(y)
    p_res, d_res = _residuals(problem, it.x, y, it.s, free)
    gap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
    if core.status == SLOW_PROGRESS:
        logger.warning(f'SDP stopped with slow progress after {it.iteration} iterations '
                       f'(pinf={p_res:.2e}, dinf={d_res:.2e}, gap={gap:.2e})')
    else:
        logger.info(f'SDP solved: {it.iteration} iterations, objective {pobj:.10g}')
    return SdpSolution(core.status, it.x, y, it.s, free, pobj, dobj, it.iteration,
                       p_res, d_res, gap)


def is_usable(solution: SdpSolution, tol: Optional[Tolerances] = None) -> bool:
    """Optimal, or slow progress that still met a loosened (×100) accuracy."""
    tol = tol or Tolerances()
    if solution.status == OPTIMAL:
        return True
    if solution.status != SLOW_PROGRESS:
        return False
    loose = 100.0
    return (solution.primal_residual <= loose * tol.feas_tol
            and solution.dual_residual <= loose * tol.feas_tol
            and solution.gap <= loose * tol.gap_tol)
