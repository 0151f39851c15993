"""Reader and writer for the sparse SDPA text format.

SDPA primal: min cᵀx s.t. Σ F_i x_i − F_0 ⪰ 0. Its dual, max ⟨F_0, Y⟩ s.t.
⟨F_i, Y⟩ = c_i, Y ⪰ 0, is our primal with F_0 = −C, F_i = A_i and c = b.
Negative block sizes denote diagonal blocks; they are read as runs of 1×1
blocks. Free variables are written as differences of two non-negative 1×1
entries in a trailing diagonal block.
"""

import re
from pathlib import Path
from typing import List, Union

import numpy as np

from ..errors import ParseError
from .problem import SdpProblem

_PUNCTUATION = re.compile(r'[{}(),]')


def _format(value: float) -> str:
    return format(float(value), '.17g')


def write_sdpa(problem: SdpProblem, comment: str = 'written by posopt') -> str:
    """Serialize ``problem`` in sparse SDPA format."""
    m = problem.num_constraints
    f = problem.num_free
    sizes: List[int] = list(problem.block_sizes)
    if f:
        sizes.append(-2 * f)
    lines = [f'"{comment}', str(m), str(len(sizes)), ' '.join(str(s) for s in sizes)]
    lines.append(' '.join(_format(v) for v in problem.b) if m else '')

    def emit(mat_index: int, block: int, matrix: np.ndarray):
        n = matrix.shape[0]
        for i in range(n):
            for j in range(i, n):
                if matrix[i, j] != 0.0:
                    lines.append(f'{mat_index} {block} {i + 1} {j + 1} {_format(matrix[i, j])}')

    for k, c in enumerate(problem.c_blocks, start=1):
        emit(0, k, -c)
    for i in range(m):
        for k, a in enumerate(problem.a_blocks, start=1):
            emit(i + 1, k, a[i])
    if f:
        free_block = len(problem.block_sizes) + 1
        for j in range(f):
            cost = problem.free_c[j]
            if cost != 0.0:
                lines.append(f'0 {free_block} {2 * j + 1} {2 * j + 1} {_format(-cost)}')
                lines.append(f'0 {free_block} {2 * j + 2} {2 * j + 2} {_format(cost)}')
            for i in range(m):
                coeff = problem.free_a[i, j]
                if coeff != 0.0:
                    lines.append(f'{i + 1} {free_block} {2 * j + 1} {2 * j + 1} {_format(coeff)}')
                    lines.append(f'{i + 1} {free_block} {2 * j + 2} {2 * j + 2} {_format(-coeff)}')
    return '\n'.join(lines) + '\n'


def read_sdpa(text: str) -> SdpProblem:
    """Parse sparse SDPA text into an SdpProblem (diagonal blocks become 1×1 blocks)."""
    tokens: List[str] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped[0] in '"*':
            continue
        tokens.extend(_PUNCTUATION.sub(' ', stripped).split())

    pos = 0

    def take(count: int, kind=float):
        nonlocal pos
        if pos + count > len(tokens):
            raise ParseError('Unexpected end of SDPA data', pos)
        try:
            values = [kind(float(t)) if kind is int else kind(t) for t in tokens[pos:pos + count]]
        except ValueError as exc:
            raise ParseError(f'Bad SDPA number: {exc}', pos) from exc
        pos += count
        return values

    m = take(1, int)[0]
    nblocks = take(1, int)[0]
    raw_sizes = take(nblocks, int)
    c_vec = np.array(take(m)) if m else np.zeros(0)

    # map (SDPA block, row index) -> (our block, offset)
    sizes: List[int] = []
    layout = []
    for raw in raw_sizes:
        if raw == 0:
            raise ParseError('SDPA block size 0')
        if raw > 0:
            layout.append((len(sizes), False))
            sizes.append(raw)
        else:
            layout.append((len(sizes), True))
            sizes.extend([1] * (-raw))

    f0 = [np.zeros((n, n)) for n in sizes]
    fs = [np.zeros((m, n, n)) for n in sizes]
    remaining = len(tokens) - pos
    if remaining % 5:
        raise ParseError('SDPA entry list is not a multiple of five numbers', pos)
    for _ in range(remaining // 5):
        mat, blk, i, j = take(4, int)
        value = take(1)[0]
        if not 1 <= blk <= nblocks or not 0 <= mat <= m:
            raise ParseError(f'SDPA entry refers to matrix {mat} block {blk}', pos)
        start, diagonal = layout[blk - 1]
        if diagonal:
            if i != j:
                raise ParseError('Off-diagonal entry in a diagonal SDPA block', pos)
            target, r, c = start + i - 1, 0, 0
        else:
            target, r, c = start, i - 1, j - 1
        n = sizes[target]
        if not (0 <= r < n and 0 <= c < n):
            raise ParseError(f'SDPA entry ({i}, {j}) outside block {blk}', pos)
        dest = f0[target] if mat == 0 else fs[target][mat - 1]
        dest[r, c] = value
        dest[c, r] = value

    return SdpProblem(tuple(sizes), [-f for f in f0], fs, c_vec)


def load_sdpa(path: Union[str, Path]) -> SdpProblem:
    return read_sdpa(Path(path).read_text())


def save_sdpa(problem: SdpProblem, path: Union[str, Path]) -> None:
    Path(path).write_text(write_sdpa(problem))
