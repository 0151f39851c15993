"""Free *-algebra commands."""

import re
from typing import Any, Dict, List, Optional

import numpy as np

from ...errors import InputError
from ...nc import (
    MatrixTuple,
    NcPoly,
    build_lmi,
    convexity_test,
    cyclic_reduce,
    cyclically_equivalent,
    infer_nc_mode,
    infer_nc_vars,
    left_ideal_member,
    middle_matrix,
    nc_derivative,
    nc_eval,
    nc_parse,
    nc_sos_check,
    quotient_basis,
)
from ...sdp import is_usable, solve_sdp
from ..base_command import BaseCommand


def _nc_poly(command: BaseCommand, name: str = 'p', num_a: int = 0,
             num_vars: Optional[int] = None, mode: Optional[str] = None) -> NcPoly:
    text = str(command.option(name, ''))
    mode = mode or command.option('mode') or infer_nc_mode(text)
    g = num_vars or command.int_option('num_vars') or infer_nc_vars(text)
    return nc_parse(text, g, mode, num_a)


def _tuple_option(command: BaseCommand, name: str, mode: str) -> MatrixTuple:
    value = command.json_option(name)
    if isinstance(value, dict):
        return MatrixTuple.from_dict({'mode': mode, **value})
    if not isinstance(value, list):
        raise InputError(f'{name} must be a list of matrices')
    return MatrixTuple.of([np.atleast_2d(np.asarray(m, dtype=float)) for m in value], mode)


class NcEvalCommand(BaseCommand):
    """p(X) for a matrix tuple, with its eigenvalues."""

    @property
    def command_path(self) -> str:
        return 'nc eval'

    @property
    def display_name(self) -> str:
        return 'NC evaluation'

    @property
    def description(self) -> str:
        return 'Evaluate an NC polynomial on a tuple of matrices'

    @property
    def required_options(self) -> List[str]:
        return ['p', 'matrices']

    def run(self) -> Dict[str, Any]:
        X = _tuple_option(self, 'matrices', self.option('mode') or infer_nc_mode(self.option('p')))
        p = _nc_poly(self, num_vars=self.int_option('num_vars') or len(X), mode=X.mode)
        value = nc_eval(p, X)
        certificate: Dict[str, Any] = {'value': value.tolist()}
        if np.allclose(value, value.T, atol=1e-12 * (1.0 + np.abs(value).max(initial=0.0))):
            certificate['eigenvalues'] = np.linalg.eigvalsh((value + value.T) / 2.0).tolist()
        return {'verdict': 'computed', 'certificate': certificate,
                'diagnostics': {'size': X.size, 'polynomial': p.render()}}


class NcDeriveCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'nc derive'

    @property
    def display_name(self) -> str:
        return 'NC directional derivative'

    @property
    def description(self) -> str:
        return 'k-th directional derivative p^(k)(x)[h]'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'k': 1}

    @property
    def required_options(self) -> List[str]:
        return ['p']

    def run(self) -> Dict[str, Any]:
        p = _nc_poly(self)
        derivative = nc_derivative(p, self.int_option('k'))
        return {
            'verdict': 'computed',
            'certificate': {'derivative': derivative.render(), 'terms': derivative.to_dict()},
            'diagnostics': {'degree': derivative.degree, 'labels': list(derivative.labels)},
        }


class NcSosCommand(BaseCommand):
    """Sum of hermitian squares Σ q_j* q_j, or a tuple with ⟨p(X)ξ, ξ⟩ < 0."""

    @property
    def command_path(self) -> str:
        return 'nc sos'

    @property
    def display_name(self) -> str:
        return 'NC sum of squares'

    @property
    def description(self) -> str:
        return 'Decide whether an NC polynomial is a sum of hermitian squares'

    @property
    def required_options(self) -> List[str]:
        return ['p']

    def run(self) -> Dict[str, Any]:
        p = _nc_poly(self)
        result = nc_sos_check(p, self.seeded_tol())
        return {
            'verdict': 'sos' if result.is_sos else 'not_sos',
            'certificate': result.to_dict(list(p.labels)),
            'diagnostics': {'margin': result.margin, 'reason': result.reason},
        }


class NcConvexCommand(BaseCommand):
    """Matrix convexity verdict with a midpoint witness for non-convex p."""

    @property
    def command_path(self) -> str:
        return 'nc convex'

    @property
    def display_name(self) -> str:
        return 'NC convexity'

    @property
    def description(self) -> str:
        return 'Matrix convexity test via the middle matrix and midpoint witnesses'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'sizes': [2, 3, 4]}

    @property
    def required_options(self) -> List[str]:
        return ['p']

    def run(self) -> Dict[str, Any]:
        p = _nc_poly(self)
        sizes = [int(s) for s in self.option('sizes')]
        verdict = convexity_test(p, sizes, self.seeded_tol())
        diagnostics = dict(verdict.diagnostics)
        if p.degree >= 2:
            rep = middle_matrix(p)
            diagnostics['middle_matrix_size'] = rep.size
        return {'verdict': verdict.verdict, 'certificate': verdict.to_dict(),
                'diagnostics': {'reason': verdict.reason, **diagnostics}}


class NcLmiCommand(BaseCommand):
    """Schur-complement LMI for P(A, X) ⪯ 0, optionally solved for feasibility."""

    @property
    def command_path(self) -> str:
        return 'nc lmi'

    @property
    def display_name(self) -> str:
        return 'NC LMI conversion'

    @property
    def description(self) -> str:
        return 'Convert a convex quadratic matrix inequality into an LMI'

    @property
    def default_options(self) -> Dict[str, Any]:
        return {'size': 1, 'solve': False}

    @property
    def required_options(self) -> List[str]:
        return ['p']

    def run(self) -> Dict[str, Any]:
        text = str(self.option('p'))
        mode = self.option('mode') or infer_nc_mode(text)
        num_a = max([int(i) for i in re.findall(r'a(\d+)', text)], default=0)
        A = _tuple_option(self, 'a', mode) if num_a else MatrixTuple((), mode)
        if len(A) != num_a:
            raise InputError(f'p uses {num_a} known letters but {len(A)} matrices were given')
        P = _nc_poly(self, num_a=num_a, mode=mode)
        check = _nc_poly(self, 'check', num_a=num_a, mode=mode) if self.option('check') else None
        rep = build_lmi(P, A, check, self.int_option('size'), tol=self.tol)
        diagnostics: Dict[str, Any] = {'num_unknowns': rep.num_unknowns, 'dimension': rep.dimension}
        verdict = 'converted'
        if self.option('solve'):
            solution = solve_sdp(rep.to_sdp(), self.tol)
            diagnostics['sdp_status'] = solution.status
            if is_usable(solution, self.tol):
                X = rep.unknowns_to_tuple(solution.y)
                diagnostics['solution'] = X.to_dict()
                diagnostics['max_eig'] = float(np.linalg.eigvalsh(rep.evaluate(X))[-1])
                verdict = 'feasible'
            else:
                verdict = 'infeasible'
        return {'verdict': verdict, 'certificate': rep.to_dict(), 'diagnostics': diagnostics}


class NcIdealCommand(BaseCommand):
    """Left ideal membership and the truncated quotient F/I."""

    @property
    def command_path(self) -> str:
        return 'nc ideal'

    @property
    def display_name(self) -> str:
        return 'NC left ideal'

    @property
    def description(self) -> str:
        return 'Left ideal membership of q and the quotient basis up to degree d'

    @property
    def required_options(self) -> List[str]:
        return ['generators', 'degree']

    def run(self) -> Dict[str, Any]:
        texts = [str(t) for t in self.option('generators')]
        if not texts:
            raise InputError('Give at least one generator')
        everything = ' '.join(texts + [str(self.option('q', ''))])
        mode = self.option('mode') or infer_nc_mode(everything)
        g = self.int_option('num_vars') or infer_nc_vars(everything)
        generators = [nc_parse(t, g, mode) for t in texts]
        d = self.int_option('degree')
        qb = quotient_basis(generators, d)
        certificate: Dict[str, Any] = {'quotient': qb.to_dict(), 'dimension': qb.dimension}
        verdict = 'computed'
        if self.option('q'):
            membership = left_ideal_member(nc_parse(str(self.option('q')), g, mode), generators, d)
            certificate['membership'] = membership.to_dict()
            verdict = 'member' if membership.member else 'not_member'
        return {'verdict': verdict, 'certificate': certificate, 'diagnostics': {'num_vars': g}}


class NcCyclicCommand(BaseCommand):

    @property
    def command_path(self) -> str:
        return 'nc cyclic'

    @property
    def display_name(self) -> str:
        return 'Cyclic equivalence'

    @property
    def description(self) -> str:
        return 'Canonical cyclic representative of p, compared with q when given'

    @property
    def required_options(self) -> List[str]:
        return ['p']

    def run(self) -> Dict[str, Any]:
        texts = str(self.option('p')) + ' ' + str(self.option('q', ''))
        mode = self.option('mode') or infer_nc_mode(texts)
        g = self.int_option('num_vars') or infer_nc_vars(texts)
        p = nc_parse(str(self.option('p')), g, mode)
        certificate: Dict[str, Any] = {'reduced': cyclic_reduce(p).render()}
        verdict = 'computed'
        if self.option('q'):
            q = nc_parse(str(self.option('q')), g, mode)
            equivalent = cyclically_equivalent(p, q)
            certificate['difference'] = cyclic_reduce(p - q).render()
            verdict = 'equivalent' if equivalent else 'not_equivalent'
        return {'verdict': verdict, 'certificate': certificate, 'diagnostics': {}}
