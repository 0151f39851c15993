"""Border-vector / middle-matrix form of the NC Hessian."""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from ..errors import InputError
from .derivative import derivative_labels, hessian
from .evaluate import MatrixTuple, nc_eval
from .ncpoly import NcPoly
from .words import Word, letter_var, render_word, star_word, word_key


@dataclass
class MiddleMatrixRep:
    """p″(x)[h] = Σ_ij border_i* · M_ij(x) · border_j.

    Border entries are words h_u·m(x) in the 2g variables of the Hessian; the
    middle entries are NcPolys in x alone.
    """

    border: List[Word]
    middle: List[List[NcPoly]]
    target: NcPoly
    num_vars: int
    mode: str

    @property
    def size(self) -> int:
        return len(self.border)

    def reconstruct(self) -> NcPoly:
        g2 = 2 * self.num_vars
        total = NcPoly.zero(g2, self.mode)
        for i, bi in enumerate(self.border):
            left = NcPoly.word(g2, star_word(bi, self.mode), 1.0, self.mode)
            for j, bj in enumerate(self.border):
                entry = self.middle[i][j]
                if entry.is_zero():
                    continue
                right = NcPoly.word(g2, bj, 1.0, self.mode)
                total = total + left * entry.embed(g2) * right
        return total.relabel(self.target.labels)

    def evaluate(self, X: MatrixTuple) -> np.ndarray:
        """Block matrix [M_ij(X)]."""
        n = X.size
        k = self.size
        out = np.zeros((k * n, k * n))
        for i in range(k):
            for j in range(k):
                entry = self.middle[i][j]
                if not entry.is_zero():
                    out[i * n:(i + 1) * n, j * n:(j + 1) * n] = nc_eval(entry, X)
        return out

    def is_constant(self) -> bool:
        return all(e.degree <= 0 for row in self.middle for e in row)

    def constant_matrix(self) -> np.ndarray:
        return np.array([[e.coefficient(()) for e in row] for row in self.middle])

    def to_dict(self) -> Dict[str, Any]:
        labels = self.target.labels
        return {
            'border': [render_word(w, labels) for w in self.border],
            'middle': [[e.render() for e in row] for row in self.middle],
        }


def split_quadratic(word: Word, num_vars: int) -> Tuple[Word, int, Word, int, Word]:
    """m1 ℓ1 m2 ℓ2 m3 where ℓ1, ℓ2 are the two letters of variables ≥ num_vars."""
    marks = [i for i, c in enumerate(word) if letter_var(c) >= num_vars]
    if len(marks) != 2:
        raise InputError(f'Word {word} is not quadratic in the direction letters')
    i, j = marks
    return word[:i], word[i], word[i + 1:j], word[j], word[j + 1:]


def middle_from_quadratic(quad: NcPoly, num_vars: int,
                          mode: str) -> Tuple[List[Word], List[List[NcPoly]]]:
    """Border and middle entries for a polynomial homogeneous of degree 2 in the last letters."""
    cells: Dict[Tuple[Word, Word], Dict[Word, float]] = {}
    for word, coeff in quad.items():
        m1, l1, m2, l2, m3 = split_quadratic(word, num_vars)
        row = star_word(m1 + (l1,), mode)
        col = (l2,) + m3
        cell = cells.setdefault((row, col), {})
        cell[m2] = cell.get(m2, 0.0) + coeff
    border = sorted({r for r, _ in cells} | {c for _, c in cells}, key=word_key)
    pos = {w: i for i, w in enumerate(border)}
    labels = quad.labels[:num_vars]
    middle = [[NcPoly.zero(num_vars, mode).relabel(labels) for _ in border] for _ in border]
    for (row, col), terms in cells.items():
        middle[pos[row]][pos[col]] = NcPoly(num_vars, terms, mode, labels)
    return border, middle


def middle_matrix(p: NcPoly) -> MiddleMatrixRep:
    """Decompose the Hessian of a symmetric p, deg p ≥ 2."""
    if not p.is_symmetric():
        raise InputError('middle_matrix requires a symmetric polynomial')
    if p.degree < 2:
        raise InputError('middle_matrix requires degree at least 2 (the Hessian vanishes)')
    target = hessian(p).relabel(derivative_labels(p))
    border, middle = middle_from_quadratic(target, p.num_vars, p.mode)
    return MiddleMatrixRep(border, middle, target, p.num_vars, p.mode)
