"""Utility helpers for posopt."""

from .certificate_verifier import CertificateVerifier
from .serialization import (
    canonical_json,
    inputs_digest,
    load_json_option,
    matrix_option,
    to_jsonable,
    write_json,
)

__all__ = [
    'CertificateVerifier',
    'canonical_json',
    'inputs_digest',
    'load_json_option',
    'matrix_option',
    'to_jsonable',
    'write_json',
]
