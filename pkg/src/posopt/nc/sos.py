"""Sums of hermitian squares in the free *-algebra."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import InputError, NumericalError
from ..sdp import DUAL_INFEASIBLE, SdpProblem, Tolerances, is_usable, psd_factor, solve_sdp
from .evaluate import MatrixTuple, nc_eval
from .ncpoly import NcPoly
from .words import SYMMETRIC, Word, render_word, star_word, word_count, word_key, words_up_to

logger = logging.getLogger(__name__)

GNS_MAX_SIZE = 60
SEARCH_MAX_SIZE = 8
SEARCH_TRIALS = 50


def _class_of(word: Word, mode: str) -> Word:
    return min(word, star_word(word, mode), key=word_key)


@dataclass
class NcGramSystem:
    """Σ_{u*v ∈ c} G_uv = rhs_c for every class c = {w, w*}."""

    basis: List[Word]
    classes: List[Word]
    b_matrices: List[np.ndarray]
    rhs: np.ndarray

    @property
    def size(self) -> int:
        return len(self.basis)

    def project(self, omega: np.ndarray) -> np.ndarray:
        """Nearest matrix satisfying the constraints; the B_c have disjoint supports."""
        out = (omega + omega.T) / 2.0
        for b, r in zip(self.b_matrices, self.rhs):
            out = out + (r - float(np.sum(b * out))) / float(np.sum(b * b)) * b
        return out

    def residual(self, omega: np.ndarray) -> float:
        values = np.array([np.sum(b * omega) for b in self.b_matrices])
        return float(np.max(np.abs(values - self.rhs), initial=0.0))


def nc_gram_system(p: NcPoly) -> NcGramSystem:
    half = max(p.degree, 0) // 2
    basis = words_up_to(p.num_vars, half, p.mode)
    n = len(basis)
    index: Dict[Word, int] = {}
    mats: List[np.ndarray] = []
    classes: List[Word] = []
    for i, u in enumerate(basis):
        us = star_word(u, p.mode)
        for j, v in enumerate(basis):
            c = _class_of(us + v, p.mode)
            if c not in index:
                index[c] = len(classes)
                classes.append(c)
                mats.append(np.zeros((n, n)))
            mats[index[c]][i, j] = 1.0
    rhs = np.zeros(len(classes))
    for w, coeff in p.items():
        c = _class_of(w, p.mode)
        if c not in index:
            raise InputError(f'Word of degree {len(w)} is not reachable from the half-degree basis')
        rhs[index[c]] += coeff
    return NcGramSystem(basis, classes, mats, rhs)


@dataclass
class NcWitness:
    """Tuple X and unit ξ with ⟨p(X)ξ, ξ⟩ < 0."""

    tuple: MatrixTuple
    vector: np.ndarray
    value: float
    route: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tuple': self.tuple.to_dict(),
            'vector': self.vector.tolist(),
            'value': self.value,
            'route': self.route,
            'size': self.tuple.size,
        }


@dataclass
class NcSosResult:
    is_sos: bool
    margin: float
    basis: List[Word] = field(default_factory=list)
    gram: Optional[np.ndarray] = None
    squares: List[NcPoly] = field(default_factory=list)
    residual: float = 0.0
    witness: Optional[NcWitness] = None
    reason: str = ''

    def to_dict(self, labels: Optional[List[str]] = None) -> Dict[str, Any]:
        out: Dict[str, Any] = {'is_sos': self.is_sos, 'margin': self.margin}
        if self.reason:
            out['reason'] = self.reason
        if self.gram is not None and labels is not None:
            out['basis'] = [render_word(w, labels) for w in self.basis]
        if self.is_sos:
            out['gram'] = None if self.gram is None else self.gram.tolist()
            out['squares'] = [q.render() for q in self.squares]
            out['residual'] = self.residual
        if self.witness is not None:
            out['witness'] = self.witness.to_dict()
        return out


def _margin_problem(system: NcGramSystem) -> SdpProblem:
    n = system.size
    stack = np.stack(system.b_matrices)
    traces = np.array([np.trace(b) for b in system.b_matrices]).reshape(-1, 1)
    return SdpProblem((n,), [np.zeros((n, n))], [stack], system.rhs,
                      free_c=np.array([-1.0]), free_a=traces)


def _squares(gram: np.ndarray, system: NcGramSystem, p: NcPoly, tol: float) -> List[NcPoly]:
    factor = psd_factor(gram, tol)
    if not factor.is_psd:
        raise NumericalError('NC Gram matrix is indefinite after projection')
    columns = factor.square_root()
    return [
        NcPoly(p.num_vars, {system.basis[i]: float(c) for i, c in enumerate(columns[:, j])},
               p.mode, p.labels)
        for j in range(columns.shape[1])
    ]


def _sum_of_hermitian_squares(squares: List[NcPoly], p: NcPoly) -> NcPoly:
    total = NcPoly.zero(p.num_vars, p.mode)
    for q in squares:
        total = total + q.star() * q
    return total


def _generic_functional(system: NcGramSystem, p: NcPoly, rng: np.random.Generator) -> np.ndarray:
    """Class values of w ↦ ⟨w(Z)η, η⟩ for a generic tuple Z of size N(k).

    The functional is positive definite on squares.
    """
    size = system.size
    Z = MatrixTuple.random(p.num_vars, size, rng, p.mode)
    eta = rng.standard_normal(size)
    eta /= np.linalg.norm(eta)
    values = np.empty(len(system.classes))
    for idx, c in enumerate(system.classes):
        values[idx] = float(eta @ nc_eval(NcPoly.word(p.num_vars, c, 1.0, p.mode), Z) @ eta)
    return values


def _gns_witness(p: NcPoly, system: NcGramSystem, functional: np.ndarray,
                 rng: np.random.Generator) -> Optional[NcWitness]:
    """Truncated GNS construction from a functional that is negative on p."""
    if system.size > GNS_MAX_SIZE or p.degree < 2:
        return None
    value = float(functional @ system.rhs)
    generic = _generic_functional(system, p, rng)
    generic_value = float(generic @ system.rhs)
    delta = 0.5 * abs(value) / (abs(generic_value) + 1.0)
    mixed = functional + delta * generic
    moment = sum(v * b for v, b in zip(mixed, system.b_matrices))
    eigvals, eigvecs = np.linalg.eigh(moment)
    keep = eigvals > 1e-12 * max(float(eigvals[-1]), 1e-300)
    if not np.any(keep):
        return None
    root = np.sqrt(eigvals[keep])[:, None] * eigvecs[:, keep].T
    pos = {w: i for i, w in enumerate(system.basis)}
    half = max((len(w) for w in system.basis), default=0)
    inner = [w for w in system.basis if len(w) < half]
    r_inner = root[:, [pos[w] for w in inner]]
    pinv = np.linalg.pinv(r_inner)
    proj = r_inner @ pinv
    eye = np.eye(root.shape[0])

    def action(code: int) -> np.ndarray:
        return root[:, [pos[(code,) + w] for w in inner]] @ pinv

    mats = []
    for j in range(p.num_vars):
        code = 2 * j
        a = action(code)
        b = a if p.mode == SYMMETRIC else action(code + 1)
        mats.append(a @ proj + (b @ proj).T @ (eye - proj))
    if p.mode == SYMMETRIC:
        mats = [(m + m.T) / 2.0 for m in mats]
    X = MatrixTuple(tuple(mats), p.mode)
    xi = root[:, pos[()]]
    norm = float(np.linalg.norm(xi))
    if norm <= 0.0:
        return None
    xi = xi / norm
    val = float(xi @ nc_eval(p, X) @ xi)
    if val < -1e-10 * (1.0 + p.coeff_norm()):
        return NcWitness(X, xi, val, 'gns')
    logger.debug(f'GNS candidate not negative ({val:.3e}); falling back to random search')
    return None


def _search_witness(p: NcPoly, rng: np.random.Generator, max_size: int) -> Optional[NcWitness]:
    threshold = -1e-8 * (1.0 + p.coeff_norm())
    candidates: List[Tuple[MatrixTuple, str]] = [
        (MatrixTuple(tuple(-np.eye(1) for _ in range(p.num_vars)), p.mode), 'scalar')
    ]
    for size in range(1, max_size + 1):
        for _ in range(SEARCH_TRIALS):
            candidates.append((MatrixTuple.random(p.num_vars, size, rng, p.mode), 'random'))
    for X, route in candidates:
        value = nc_eval(p, X)
        eigvals, eigvecs = np.linalg.eigh((value + value.T) / 2.0)
        if eigvals[0] < threshold:
            return NcWitness(X, eigvecs[:, 0], float(eigvals[0]), route)
    return None


def nc_sos_check(p: NcPoly, tol: Optional[Tolerances] = None) -> NcSosResult:
    """Decide whether p is a sum of hermitian squares Σ q_j* q_j.

    Maximizes t subject to the NC Gram constraints and G − tI ⪰ 0. When p is
    not SOS a tuple with ⟨p(X)ξ, ξ⟩ < 0 is sought, first from the dual
    functional and then by seeded random search up to size N(k).
    """
    tol = tol or Tolerances()
    if not p.is_symmetric():
        raise InputError('nc_sos_check requires a symmetric polynomial')
    rng = np.random.default_rng(tol.seed)
    half = max(p.degree, 0) // 2
    search_size = min(word_count(p.num_vars, half, p.mode), SEARCH_MAX_SIZE)

    if p.degree % 2 == 1:
        witness = _search_witness(p, rng, max(search_size, 1))
        return NcSosResult(False, -np.inf, witness=witness, reason='odd_degree')

    system = nc_gram_system(p)
    solution = solve_sdp(_margin_problem(system), tol)
    if solution.status == DUAL_INFEASIBLE or not is_usable(solution, tol):
        raise NumericalError(f'NC Gram SDP failed with status {solution.status}', solution.status)
    margin = float(solution.free[0])
    logger.info(f'nc_sos_check: margin {margin:.3e} on {system.size} words')

    if margin >= -10.0 * tol.feas_tol * (1.0 + p.coeff_norm()):
        gram = system.project(solution.x_blocks[0] + max(margin, 0.0) * np.eye(system.size))
        squares = _squares(gram, system, p, tol.rank_tol)
        residual = (_sum_of_hermitian_squares(squares, p) - p).coeff_norm()
        return NcSosResult(True, margin, system.basis, gram, squares, residual)

    witness = _gns_witness(p, system, -solution.y, rng)
    if witness is None:
        witness = _search_witness(p, rng, search_size)
    if witness is None:
        logger.warning('nc_sos_check: no negativity witness found')
    return NcSosResult(False, margin, system.basis, witness=witness, reason='sdp_infeasible')
