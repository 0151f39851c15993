"""Loading moment data from CSV or JSON."""

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..errors import InputError
from ..onedim import complex_array
from ..poly import Monomial
from .sequence import CIRCLE, MULTIVARIATE, REAL, MomentSequence


def parse_moments(data: Any, kind: str = REAL) -> MomentSequence:
    """Build a MomentSequence from decoded JSON.

    Lists give real-line (numbers) or circle (``[re, im]`` pairs or numbers)
    moments; objects keyed by exponent strings ``"a,b"`` give multivariate ones.
    """
    if isinstance(data, dict) and 'values' in data:
        kind = data.get('kind', kind)
        data = data['values']
    if isinstance(data, dict):
        try:
            values = {Monomial.from_key_string(k): float(v) for k, v in data.items()}
        except ValueError as exc:
            raise InputError(f'Bad multivariate moment key: {exc}') from exc
        num_vars = {len(m) for m in values}
        if len(num_vars) != 1:
            raise InputError('Multivariate moment keys have inconsistent lengths')
        return MomentSequence(MULTIVARIATE, values, num_vars.pop())
    if not isinstance(data, list):
        raise InputError('Moments must be a JSON array or object')
    if kind == CIRCLE:
        return MomentSequence.circle(complex_array(data))
    try:
        return MomentSequence.real([float(v) for v in data])
    except (TypeError, ValueError) as exc:
        raise InputError(f'Real moments must be numbers: {exc}') from exc


def load_moments(path: Union[str, Path], kind: str = REAL) -> MomentSequence:
    """CSV (one value per line, index order) or JSON file."""
    path = Path(path)
    if path.suffix.lower() == '.json':
        return parse_moments(json.loads(path.read_text()), kind)
    try:
        dtype = complex if kind == CIRCLE else float
        values = np.loadtxt(path, delimiter=',', ndmin=1, dtype=dtype)
    except ValueError as exc:
        raise InputError(f'Could not read moments from {path}: {exc}') from exc
    return MomentSequence(kind, values.reshape(-1))
