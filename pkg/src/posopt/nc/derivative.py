"""Directional derivatives and cyclic reduction of NC polynomials."""

import itertools
import math
from typing import Dict, List

from ..errors import InputError
from .ncpoly import NcPoly
from .words import Word, letter, letter_star, letter_var, rotations, word_key


def derivative_labels(p: NcPoly) -> List[str]:
    g = p.num_vars
    if g == 1:
        return [p.labels[0], 'h']
    return list(p.labels) + [f'h{j + 1}' for j in range(g)]


def nc_derivative(p: NcPoly, k: int) -> NcPoly:
    """p^(k)(x)[h] = d^k/dt^k p(x + th) at t = 0, as an NcPoly in (x, h).

    Letter x_j (or x_j*) at a chosen position becomes h_j (or h_j*), the h's
    being variables g..2g-1. Every k-subset of positions contributes k! times.
    """
    if k < 1:
        raise InputError(f'Derivative order must be at least 1, got {k}')
    g = p.num_vars
    scale = float(math.factorial(k))
    terms: Dict[Word, float] = {}
    for word, coeff in p.items():
        for positions in itertools.combinations(range(len(word)), k):
            new = list(word)
            for i in positions:
                code = word[i]
                new[i] = letter(letter_var(code) + g, letter_star(code))
            key = tuple(new)
            terms[key] = terms.get(key, 0.0) + scale * coeff
    return NcPoly(2 * g, terms, p.mode, derivative_labels(p))


def hessian(p: NcPoly) -> NcPoly:
    return nc_derivative(p, 2)


def canonical_rotation(word: Word) -> Word:
    return min(rotations(word), key=word_key)


def cyclic_reduce(p: NcPoly) -> NcPoly:
    """Replace every word by the minimum of its cyclic orbit and merge."""
    terms: Dict[Word, float] = {}
    for word, coeff in p.items():
        key = canonical_rotation(word)
        terms[key] = terms.get(key, 0.0) + coeff
    return NcPoly(p.num_vars, terms, p.mode, p.labels).chop(1e-14 * (1.0 + p.coeff_norm()))


def cyclically_equivalent(p: NcPoly, q: NcPoly) -> bool:
    return cyclic_reduce(p - q).is_zero()
