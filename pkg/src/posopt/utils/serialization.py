"""JSON helpers shared by the command layer, the CLI and the API."""

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from ..errors import DimensionError, InputError


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy values, complex numbers and tuples to JSON types."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def canonical_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(',', ':'))


def inputs_digest(command: str, options: Dict[str, Any]) -> str:
    """SHA-256 over the canonical JSON of the command path and its options."""
    payload = canonical_json({'command': command, 'options': options})
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def load_json_option(value: Any, name: str) -> Any:
    """An option given inline (decoded JSON) or as a path to a JSON file."""
    if isinstance(value, (str, os.PathLike)):
        path = Path(value)
        if not path.exists():
            raise InputError(f'{name}: file not found: {value}')
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise InputError(f'{name}: invalid JSON in {value}: {e}')
    return value


def matrix_option(value: Any, name: str, square: bool = False) -> np.ndarray:
    """Row-major nested list (or scalar) to a 2-D float array."""
    try:
        mat = np.atleast_2d(np.asarray(value, dtype=float))
    except (TypeError, ValueError) as e:
        raise InputError(f'{name} must be a numeric matrix: {e}')
    if mat.ndim != 2:
        raise DimensionError(f'{name} must be a matrix, got {mat.ndim} dimensions')
    if square and mat.shape[0] != mat.shape[1]:
        raise DimensionError(f'{name} must be square, got {mat.shape}')
    return mat


def write_json(value: Any, path: Optional[str]) -> str:
    text = json.dumps(to_jsonable(value), indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + '\n')
    return text
