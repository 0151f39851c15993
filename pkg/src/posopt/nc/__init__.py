"""Free *-algebra: NC polynomials, hermitian squares, convexity and LMIs."""

from .convexity import (
    CONVEX,
    DEFECT_TOL,
    DEGREE_THEOREM,
    MIDDLE_MATRIX_PSD,
    MIDDLE_MATRIX_WITNESS,
    NOT_CONVEX,
    ConvexityVerdict,
    ConvexityWitness,
    convexity_test,
    midpoint_defect,
    midpoint_samples,
)
from .derivative import (
    canonical_rotation,
    cyclic_reduce,
    cyclically_equivalent,
    hessian,
    nc_derivative,
)
from .evaluate import MatrixTuple, min_eig_at, nc_eval, nc_quadratic_form, word_eval
from .ideal import (
    IdealMembership,
    QuotientBasis,
    left_ideal_member,
    quotient_action,
    quotient_basis,
    quotient_operators,
)
from .lmi import LmiRep, build_lmi, split_by_x_degree
from .middle import MiddleMatrixRep, middle_matrix
from .ncpoly import NcPoly, nc_sum
from .parser import infer_nc_mode, infer_nc_vars, nc_parse
from .sos import NcGramSystem, NcSosResult, NcWitness, nc_gram_system, nc_sos_check
from .words import FREE_STAR, SYMMETRIC, Word, letter, star_word, word_count, words_up_to

__all__ = [
    'CONVEX',
    'ConvexityVerdict',
    'ConvexityWitness',
    'DEFECT_TOL',
    'DEGREE_THEOREM',
    'FREE_STAR',
    'IdealMembership',
    'LmiRep',
    'MIDDLE_MATRIX_PSD',
    'MIDDLE_MATRIX_WITNESS',
    'MatrixTuple',
    'MiddleMatrixRep',
    'NOT_CONVEX',
    'NcGramSystem',
    'NcPoly',
    'NcSosResult',
    'NcWitness',
    'QuotientBasis',
    'SYMMETRIC',
    'Word',
    'build_lmi',
    'canonical_rotation',
    'convexity_test',
    'cyclic_reduce',
    'cyclically_equivalent',
    'hessian',
    'infer_nc_mode',
    'infer_nc_vars',
    'left_ideal_member',
    'letter',
    'middle_matrix',
    'midpoint_defect',
    'midpoint_samples',
    'min_eig_at',
    'nc_derivative',
    'nc_eval',
    'nc_gram_system',
    'nc_parse',
    'nc_quadratic_form',
    'nc_sos_check',
    'nc_sum',
    'quotient_action',
    'quotient_basis',
    'quotient_operators',
    'split_by_x_degree',
    'star_word',
    'word_count',
    'word_eval',
    'words_up_to',
]
