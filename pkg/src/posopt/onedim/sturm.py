"""Sturm sequences in exact rational arithmetic."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..errors import DimensionError, InputError
from ..poly import Poly

Coeffs = List[Fraction]


@dataclass
class SturmChain:
    chain: List[Poly]
    bound: float
    exact: List[Coeffs]

    def sign_changes(self, x: float) -> int:
        return _variations(self.exact, Fraction(x))


def _coefficients(p: Poly) -> Coeffs:
    if p.num_vars != 1:
        raise DimensionError(f'Sturm sequences need a one-variable polynomial, got {p.num_vars}')
    coeffs = [Fraction(0)] * (p.degree + 1)
    for mono, value in p.items():
        coeffs[mono.exponents[0]] = Fraction(value)
    return coeffs


def _trim(c: Coeffs) -> Coeffs:
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _derivative(c: Coeffs) -> Coeffs:
    return [k * c[k] for k in range(1, len(c))]


def _remainder(a: Coeffs, b: Coeffs) -> Coeffs:
    a = list(a)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] -= factor * bi
        a = _trim(a[:-1])
    return _trim(a)


def _evaluate(c: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def _variations(chain: List[Coeffs], x: Fraction) -> int:
    signs = [v > 0 for v in (_evaluate(c, x) for c in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _to_poly(c: Coeffs) -> Poly:
    return Poly(1, {(k,): float(v) for k, v in enumerate(c) if v != 0})


def real_root_bound(p: Poly) -> float:
    """Cauchy bound C = 1 + Σ_{j<n} |a_j / a_n|: every real root lies in (−C, C)."""
    c = _trim(_coefficients(p))
    if not c:
        raise InputError('The zero polynomial has no root bound')
    lead = abs(c[-1])
    return float(1 + sum(abs(a) for a in c[:-1]) / lead)


def sturm_chain(p: Poly) -> SturmChain:
    """p_0 = p, p_1 = p′, p_{j+1} = −rem(p_{j−1}, p_j), each scaled by 1/|lead|."""
    first = _trim(_coefficients(p))
    if not first:
        raise InputError('Sturm chain of the zero polynomial')
    chain = [first]
    nxt = _trim(_derivative(first))
    while nxt:
        chain.append(nxt)
        rem = _remainder(chain[-2], chain[-1])
        if not rem:
            break
        lead = abs(rem[-1])
        nxt = [-v / lead for v in rem]
    return SturmChain([_to_poly(c) for c in chain], real_root_bound(p), chain)


def sturm_count(p: Poly, lo: Optional[float] = None, hi: Optional[float] = None,
                tol: float = 1e-12) -> int:
    """Number of distinct real roots of p in (lo, hi]; defaults to (−C, C]."""
    sc = sturm_chain(p)
    lo = -sc.bound if lo is None else float(lo)
    hi = sc.bound if hi is None else float(hi)
    if not lo < hi:
        raise InputError(f'Empty interval ({lo}, {hi}]')
    if len(sc.exact[0]) == 1:
        return 0
    a = Fraction(lo)
    if _evaluate(sc.exact[0], a) == 0:
        a += Fraction(tol) * (1 + abs(a))
    return _variations(sc.exact, a) - _variations(sc.exact, Fraction(hi))
