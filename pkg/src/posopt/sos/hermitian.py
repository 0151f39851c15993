"""Hermitian polynomials p(z, z̄) = Σ p_{α,β} z^α z̄^β and hermitian squares."""

import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy import linalg

from ..errors import DimensionError, InputError
from ..onedim import to_complex
from ..poly import Monomial, Poly, parse_poly
from ..sdp import Tolerances

Key = Tuple[Monomial, Monomial]


class HermitianPoly:
    """Coefficients p_{α,β} of z^α z̄^β in ``num_vars`` complex variables."""

    def __init__(self, num_vars: int, coeffs: Optional[Mapping[Key, complex]] = None):
        self.num_vars = num_vars
        self.coeffs: Dict[Key, complex] = {}
        for (a, b), c in (coeffs or {}).items():
            a = a if isinstance(a, Monomial) else Monomial(a)
            b = b if isinstance(b, Monomial) else Monomial(b)
            if len(a) != num_vars or len(b) != num_vars:
                raise DimensionError(f'Exponent lengths differ from num_vars={num_vars}')
            c = complex(c)
            if c != 0:
                self.coeffs[(a, b)] = self.coeffs.get((a, b), 0) + c

    @classmethod
    def parse(cls, text: str, num_vars: int) -> 'HermitianPoly':
        """Parse real-coefficient text in ``z1..zg`` and conjugates ``zb1..zbg``."""
        def rename(match: re.Match) -> str:
            index = int(match.group(2))
            if not 1 <= index <= num_vars:
                raise InputError(f'Variable index {index} out of range 1..{num_vars}')
            return f'x{index + num_vars}' if match.group(1) == 'zb' else f'x{index}'

        translated = re.sub(r'(zb|z)(\d+)', rename, text)
        return cls.from_real_pair(parse_poly(translated, 2 * num_vars))

    @classmethod
    def from_real_pair(cls, p: Poly) -> 'HermitianPoly':
        """Split a Poly in (z, z̄) variables, the first half being z."""
        if p.num_vars % 2:
            raise DimensionError('Expected an even number of (z, z̄) variables')
        g = p.num_vars // 2
        return cls(g, {(Monomial(m.exponents[:g]), Monomial(m.exponents[g:])): c
                       for m, c in p.items()})

    @classmethod
    def from_dict(cls, num_vars: int, data: Mapping[str, Any]) -> 'HermitianPoly':
        """Keys ``"α|β"`` with comma-separated exponents; values numbers or [re, im]."""
        coeffs = {}
        for key, value in data.items():
            try:
                left, right = key.split('|')
                pair = (Monomial.from_key_string(left), Monomial.from_key_string(right))
                coeffs[pair] = to_complex(value)
            except ValueError as exc:
                raise InputError(f'Bad hermitian coefficient key {key!r}') from exc
        return cls(num_vars, coeffs)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        scale = 1.0 + max((abs(c) for c in self.coeffs.values()), default=0.0)
        for (a, b), c in self.coeffs.items():
            if abs(self.coeffs.get((b, a), 0) - np.conj(c)) > tol * scale:
                return False
        return True

    def basis(self) -> List[Monomial]:
        return sorted({a for a, _ in self.coeffs} | {b for _, b in self.coeffs}
                      | {Monomial.one(self.num_vars)})

    def coefficient_matrix(self, basis: Optional[List[Monomial]] = None) -> np.ndarray:
        basis = basis or self.basis()
        index = {m: i for i, m in enumerate(basis)}
        mat = np.zeros((len(basis), len(basis)), dtype=complex)
        for (a, b), c in self.coeffs.items():
            mat[index[a], index[b]] += c
        return mat

    def __mul__(self, other: 'HermitianPoly') -> 'HermitianPoly':
        out: Dict[Key, complex] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 * a2, b1 * b2)
                out[key] = out.get(key, 0) + c1 * c2
        return HermitianPoly(self.num_vars, out)

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        zc = np.conj(z)
        return complex(sum(c * np.prod(z ** np.array(a.exponents))
                           * np.prod(zc ** np.array(b.exponents))
                           for (a, b), c in self.coeffs.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {f'{a.key_string()}|{b.key_string()}': [c.real, c.imag]
                for (a, b), c in self.coeffs.items()}

    @classmethod
    def norm_power(cls, num_vars: int, power: int) -> 'HermitianPoly':
        """(Σ z_j z̄_j)^power."""
        base = cls(num_vars, {(Monomial.unit(num_vars, j), Monomial.unit(num_vars, j)): 1.0
                              for j in range(num_vars)})
        out = cls(num_vars, {(Monomial.one(num_vars), Monomial.one(num_vars)): 1.0})
        for _ in range(power):
            out = out * base
        return out


@dataclass
class HermitianSosResult:
    """Verdict with the analytic squares q_i(z) when p = Σ |q_i(z)|²."""

    is_hsos: bool
    min_eig: float
    basis: List[Monomial]
    squares: List[Dict[Monomial, complex]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'is_hsos': self.is_hsos,
            'min_eig': self.min_eig,
            'basis': [m.key_string() for m in self.basis],
            'squares': [{m.key_string(): [c.real, c.imag] for m, c in q.items()}
                        for q in self.squares],
        }


def hermitian_sos_check(p: HermitianPoly, tol: Optional[Tolerances] = None) -> HermitianSosResult:
    """p is a sum of hermitian squares iff (p_{α,β}) is PSD on the z-monomial basis."""
    tol = tol or Tolerances()
    if not p.is_hermitian():
        raise InputError('Coefficients violate p_{β,α} = conj(p_{α,β})')
    basis = p.basis()
    mat = p.coefficient_matrix(basis)
    mat = 0.5 * (mat + mat.conj().T)
    eigvals, eigvecs = linalg.eigh(mat)
    scale = max(1.0, float(np.abs(eigvals).max()))
    min_eig = float(eigvals[0])
    if min_eig < -tol.psd_tol * scale:
        return HermitianSosResult(False, min_eig, basis)
    squares = []
    for lam, vec in zip(eigvals, eigvecs.T):
        if lam <= tol.rank_tol * scale:
            continue
        # p = Σ λ v vᴴ entrywise, so q = Σ_α √λ·v_α z^α
        q = {m: complex(np.sqrt(lam) * v) for m, v in zip(basis, vec) if abs(v) > 1e-14}
        squares.append(q)
    return HermitianSosResult(True, min_eig, basis, squares)


def _complex_mul(p: Dict[Monomial, complex], q: Dict[Monomial, complex]) -> Dict[Monomial, complex]:
    out: Dict[Monomial, complex] = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            key = m1 * m2
            out[key] = out.get(key, 0) + c1 * c2
    return out


def to_real_variables(p: HermitianPoly, tol: float = 1e-12) -> Poly:
    """p as a real polynomial in (x_1..x_g, y_1..y_g) with z_j = x_j + i·y_j."""
    g = p.num_vars
    one = Monomial.one(2 * g)
    z = [{Monomial.unit(2 * g, j): 1.0, Monomial.unit(2 * g, g + j): 1j} for j in range(g)]
    zbar = [{Monomial.unit(2 * g, j): 1.0, Monomial.unit(2 * g, g + j): -1j} for j in range(g)]
    total: Dict[Monomial, complex] = {}
    for (a, b), c in p.coeffs.items():
        term: Dict[Monomial, complex] = {one: c}
        for j in range(g):
            for _ in range(a.exponents[j]):
                term = _complex_mul(term, z[j])
            for _ in range(b.exponents[j]):
                term = _complex_mul(term, zbar[j])
        for m, v in term.items():
            total[m] = total.get(m, 0) + v
    scale = 1.0 + max((abs(v) for v in total.values()), default=0.0)
    if any(abs(v.imag) > tol * scale for v in total.values()):
        raise InputError('Polynomial is not real valued')
    return Poly(2 * g, {m: v.real for m, v in total.items()})
