"""Words over {x_1..x_g} ∪ {x_1*..x_g*}.

A letter is the integer 2j + s for variable j (0-based) with star flag s; in
symmetric mode s is always 0. Words are tuples of letters, ordered graded
lexicographically.
"""

import itertools
from typing import List, Sequence, Tuple

from ..errors import InputError

SYMMETRIC = 'symmetric'
FREE_STAR = 'free_star'
MODES = (SYMMETRIC, FREE_STAR)

Word = Tuple[int, ...]


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise InputError(f'Unknown NC mode {mode!r}; expected one of {MODES}')
    return mode


def letter(var: int, star: bool = False) -> int:
    return 2 * var + int(star)


def letter_var(code: int) -> int:
    return code // 2


def letter_star(code: int) -> bool:
    return bool(code & 1)


def alphabet(num_vars: int, mode: str) -> List[int]:
    if mode == SYMMETRIC:
        return [letter(j) for j in range(num_vars)]
    return [letter(j, s) for j in range(num_vars) for s in (False, True)]


def star_letter(code: int, mode: str) -> int:
    return code if mode == SYMMETRIC else code ^ 1


def star_word(word: Word, mode: str) -> Word:
    """(w_1 … w_n)* = w_n* … w_1*."""
    return tuple(star_letter(c, mode) for c in reversed(word))


def word_key(word: Word) -> Tuple[int, Word]:
    return (len(word), word)


def word_count(num_vars: int, k: int, mode: str) -> int:
    """N(k): number of words of length ≤ k."""
    a = len(alphabet(num_vars, mode))
    if a == 1:
        return k + 1
    return (a ** (k + 1) - 1) // (a - 1)


def words_up_to(num_vars: int, k: int, mode: str) -> List[Word]:
    letters = alphabet(num_vars, mode)
    out: List[Word] = []
    for n in range(k + 1):
        out.extend(itertools.product(letters, repeat=n))
    return sorted(out, key=word_key)


def default_labels(num_vars: int) -> List[str]:
    return [f'x{j + 1}' for j in range(num_vars)]


def render_word(word: Word, labels: Sequence[str]) -> str:
    if not word:
        return '1'
    return ' '.join(labels[letter_var(c)] + ("'" if letter_star(c) else '') for c in word)


def rotations(word: Word) -> List[Word]:
    return [word[i:] + word[:i] for i in range(max(len(word), 1))]
