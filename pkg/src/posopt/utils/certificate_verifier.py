"""Certificate verifier: recompute the residuals of a stored result without solving."""

import logging
from functools import partial
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from ..errors import PosoptError
from ..moments import (
    CIRCLE,
    NORM,
    REAL,
    hamburger_check,
    load_moments,
    parse_moments,
    trig_moment_check,
)
from ..nc import (
    CONVEX,
    DEFECT_TOL,
    DEGREE_THEOREM,
    MIDDLE_MATRIX_PSD,
    MatrixTuple,
    infer_nc_mode,
    midpoint_defect,
    nc_eval,
    nc_parse,
)
from ..onedim import complex_array, pick_matrix
from ..poly import infer_num_vars, parse_poly, poly_sum
from ..sdp import Tolerances
from ..sos import Witness, verify_witness
from ..systems import DgkfPlant, StateSpaceSystem, storage_lmi, x_side_lmi, y_side_lmi
from .serialization import inputs_digest, load_json_option

logger = logging.getLogger(__name__)

Residuals = Dict[str, Any]


def _max_eig(M: np.ndarray) -> float:
    M = np.asarray(M, dtype=float)
    return float(np.linalg.eigvalsh((M + M.T) / 2.0)[-1])


def _min_eig(M: np.ndarray) -> float:
    M = np.asarray(M, dtype=float)
    return float(np.linalg.eigvalsh((M + M.T) / 2.0)[0])


class CertificateVerifier:
    """Utility class for checking stored certificates."""

    def __init__(self, tol: Optional[Tolerances] = None):
        self.tol = tol or Tolerances()
        self._handlers: Dict[str, Callable[..., Residuals]] = {
            'sos check': self._check_sos,
            'sos extract': self._check_squares,
            'minimize global': self._check_relaxation,
            'minimize constrained': self._check_relaxation,
            'moments hamburger': partial(self._check_moments, REAL, False),
            'moments stieltjes': partial(self._check_moments, REAL, True),
            'moments trig': partial(self._check_moments, CIRCLE, False),
            'one pick': self._check_pick,
            'nc convex': self._check_convexity,
            'nc sos': self._check_nc_sos,
            'sys dissip': self._check_storage,
            'sys dgkf': self._check_dgkf,
        }

    def verify(self, envelope: Dict[str, Any]) -> Tuple[str, Residuals, Optional[str]]:
        """
        Check an envelope written by any command.

        Returns:
            Tuple of (status, residuals, error_message)
            status: 'valid', 'invalid', or 'unknown'
            residuals: recomputed quantities for the certificate kind
            error_message: why the certificate failed (None if valid)
        """
        try:
            command = envelope['command']
            inputs = envelope.get('inputs', {})
            if envelope.get('inputs_digest') != inputs_digest(command, inputs):
                return 'invalid', {}, 'Inputs do not match the recorded digest'
            handler = self._handlers.get(command)
            if handler is None:
                return 'unknown', {}, f'No verifier for command: {command}'
            residuals = handler(inputs, envelope.get('certificate') or {}, envelope['verdict'])
        except (PosoptError, KeyError, TypeError, ValueError, np.linalg.LinAlgError) as e:
            logger.warning(f'Certificate verification failed: {e}')
            return 'invalid', {}, str(e)

        if residuals.get('valid'):
            return 'valid', residuals, None
        return 'invalid', residuals, residuals.get('reason', 'Residuals exceed tolerance')

    # Commutative SOS

    def _poly(self, inputs: Dict[str, Any], name: str = 'f'):
        text = str(inputs[name])
        return parse_poly(text, int(inputs.get('num_vars') or infer_num_vars(text)))

    def _squares_residual(self, f, squares) -> float:
        total = poly_sum((q * q for q in (parse_poly(s, f.num_vars) for s in squares)), f.num_vars)
        return (total - f).coeff_norm()

    def _check_sos(self, inputs, certificate, verdict) -> Residuals:
        f = self._poly(inputs)
        slack = self.tol.cert_tol * (1.0 + f.coeff_norm())
        if verdict == 'sos':
            gram = certificate['certificate']
            residual = self._squares_residual(f, gram['squares'])
            eig = _min_eig(gram['gram'])
            return {
                'square_residual': residual,
                'gram_min_eig': eig,
                'valid': residual <= slack and eig >= -slack,
            }
        if 'infeasibility_witness' in certificate:
            witness = Witness.from_dict(certificate['infeasibility_witness'])
            return verify_witness(witness, f, np.random.default_rng(self.tol.seed),
                                  tol=self.tol.cert_tol)
        # odd degree: f is unbounded below, nothing to recompute
        return {'valid': certificate.get('reason') == 'odd_degree' and f.degree % 2 == 1}

    def _check_squares(self, inputs, certificate, verdict) -> Residuals:
        f = self._poly(inputs)
        residual = self._squares_residual(f, certificate['squares'])
        return {'square_residual': residual,
                'valid': residual <= self.tol.cert_tol * (1.0 + f.coeff_norm())}

    def _check_relaxation(self, inputs, certificate, verdict) -> Residuals:
        if 'multipliers' not in certificate:
            return {'valid': False, 'reason': 'No SOS certificate recorded'}
        problem = certificate['problem']
        text = problem['objective']
        n = int(inputs.get('num_vars') or max(
            [infer_num_vars(t) for t in [text] + list(problem['constraints'])]))
        f = parse_poly(text, n)
        bound = float(certificate['lower_bound'])
        products = [parse_poly(p, n) for p in certificate['products']]
        multipliers = [parse_poly(s, n) for s in certificate['multipliers']]
        total = poly_sum((s * p for s, p in zip(multipliers, products)), n)
        residual = (total + bound - f).coeff_norm()
        worst = min(_min_eig(g) for g in certificate['grams'])
        slack = self.tol.cert_tol * (1.0 + f.coeff_norm())
        return {
            'identity_residual': residual,
            'gram_min_eig': worst,
            'valid': residual <= slack and worst >= -slack,
        }

    # Moments and interpolation

    def _check_moments(self, kind: str, stieltjes: bool, inputs, certificate, verdict) -> Residuals:
        value = inputs['moments']
        c = load_moments(value, kind) if isinstance(value, str) else parse_moments(value, kind)
        order = certificate.get('order')
        criterion = certificate.get('criterion', NORM)
        if kind == CIRCLE:
            check = trig_moment_check(c, order, self.tol, criterion=criterion)
        else:
            check = hamburger_check(c, order, stieltjes=stieltjes, tol=self.tol,
                                    criterion=criterion)
        agrees = check.feasible == (verdict == 'feasible')
        return {'min_eig': check.min_eig, 'feasible': check.feasible, 'valid': agrees}

    def _check_pick(self, inputs, certificate, verdict) -> Residuals:
        if inputs.get('variant', 'disk') != 'disk':
            return {'valid': True, 'reason': 'Kernel recomputation covers the disk variant only'}
        matrix = pick_matrix(complex_array(inputs['nodes']), complex_array(inputs['values']))
        matrix = 0.5 * (matrix + matrix.conj().T)
        eig = float(np.linalg.eigvalsh(matrix)[0])
        slack = self.tol.cert_tol * max(1.0, float(np.linalg.norm(matrix, 2)))
        return {'min_eig': eig, 'valid': (eig >= -slack) == (verdict == 'feasible')}

    # Free algebra

    def _nc_poly(self, inputs: Dict[str, Any], num_vars: int, mode: str):
        return nc_parse(str(inputs['p']), num_vars, mode)

    def _check_convexity(self, inputs, certificate, verdict) -> Residuals:
        if verdict == CONVEX:
            return {'valid': certificate.get('reason') in (DEGREE_THEOREM, MIDDLE_MATRIX_PSD)}
        if 'witness' not in certificate:
            return {'valid': False, 'reason': 'No convexity witness recorded'}
        witness = certificate['witness']
        X = MatrixTuple.from_dict(witness['X'])
        Y = MatrixTuple.from_dict(witness['Y'])
        p = self._nc_poly(inputs, len(X), X.mode)
        defect = midpoint_defect(p, X, Y, float(witness['t']))
        eig = _min_eig(defect)
        return {'defect_min_eig': eig,
                'valid': eig < -DEFECT_TOL * (1.0 + p.coeff_norm())}

    def _check_nc_sos(self, inputs, certificate, verdict) -> Residuals:
        text = str(inputs['p'])
        mode = inputs.get('mode') or infer_nc_mode(text)
        if 'witness' in certificate:
            witness = certificate['witness']
            X = MatrixTuple.from_dict(witness['tuple'])
            xi = np.asarray(witness['vector'], dtype=float)
            value = float(xi @ nc_eval(self._nc_poly(inputs, len(X), mode), X) @ xi)
            return {'quadratic_form': value, 'valid': value < 0.0}
        return {'valid': verdict == 'sos' and float(certificate.get('residual', np.inf))
                <= self.tol.cert_tol * (1.0 + len(certificate.get('squares', [])))}

    # Systems

    def _check_storage(self, inputs, certificate, verdict) -> Residuals:
        if verdict != 'dissipative' or certificate.get('W') is None:
            return {'valid': False, 'reason': 'No storage function recorded'}
        system = StateSpaceSystem.from_dict(load_json_option(inputs['system'], 'system'))
        W = np.asarray(certificate['W'], dtype=float)
        lmi = _max_eig(storage_lmi(system, W))
        w_eig = _min_eig(W)
        slack = self.tol.cert_tol * system.scale() ** 2
        return {'storage_lmi_max_eig': lmi, 'W_min_eig': w_eig,
                'valid': lmi <= slack and w_eig >= -slack}

    def _check_dgkf(self, inputs, certificate, verdict) -> Residuals:
        if verdict != 'feasible':
            return {'valid': False, 'reason': 'Infeasible DGKF results carry no certificate'}
        data = dict(load_json_option(inputs['plant'], 'plant'))
        if inputs.get('gamma') is not None:
            data['gamma'] = float(inputs['gamma'])
        plant = DgkfPlant.from_dict(data)
        W = np.asarray(certificate['W'], dtype=float)
        Z = np.asarray(certificate['Z'], dtype=float)
        literal = bool(inputs.get('literal'))
        x_eig = _max_eig(x_side_lmi(plant, W, literal, bool(inputs.get('printed_b2'))))
        y_eig = _max_eig(y_side_lmi(plant, Z, literal))
        n = plant.n
        coupling = _min_eig(np.block([[Z, np.eye(n)], [np.eye(n), W]]))
        return {'x_side_max_eig': x_eig, 'y_side_max_eig': y_eig, 'coupling_min_eig': coupling,
                'valid': x_eig < 0.0 and y_eig < 0.0 and coupling > 0.0}
