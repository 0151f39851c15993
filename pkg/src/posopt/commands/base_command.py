"""Base command class for posopt subcommands."""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

import numpy as np

from ..errors import InputError
from ..poly import Poly, infer_num_vars, parse_poly
from ..sdp import Tolerances
from ..utils.serialization import load_json_option


class BaseCommand(ABC):
    """Base class for all subcommands.

    A command receives plain JSON-style options (from click flags or an API
    body), validates them and returns a result dict with ``verdict``, an
    optional ``certificate`` and ``diagnostics``.
    """

    def __init__(self, options: Optional[Dict[str, Any]] = None, tol: Optional[Tolerances] = None):
        """Initialize the command with its options merged over the defaults."""
        self.options = {**self.default_options, **(options or {})}
        self.tol = tol or Tolerances()

    @property
    @abstractmethod
    def command_path(self) -> str:
        """Return the space-separated subcommand path, e.g. ``'sos check'``."""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @abstractmethod
    def run(self) -> Dict[str, Any]:
        """Compute the verdict for the current options."""
        pass

    @property
    def default_options(self) -> Dict[str, Any]:
        return {}

    @property
    def required_options(self) -> List[str]:
        return []

    def validate_options(self, options: Dict[str, Any]) -> bool:
        """Raise InputError when a required option is missing."""
        missing = [name for name in self.required_options if options.get(name) in (None, '')]
        if missing:
            raise InputError(f'{self.command_path}: missing option(s) {", ".join(missing)}')
        return True

    # Option readers

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value

    def json_option(self, name: str, default: Any = None) -> Any:
        """Option value, reading a JSON file when a path string is given."""
        value = self.option(name, default)
        return None if value is None else load_json_option(value, name)

    def int_option(self, name: str, default: Optional[int] = None) -> Optional[int]:
        value = self.option(name, default)
        if value is None:
            return None
        try:
            return int(value)
        except (TypeError, ValueError):
            raise InputError(f'Option {name} must be an integer, got {value!r}')

    def float_option(self, name: str, default: Optional[float] = None) -> Optional[float]:
        value = self.option(name, default)
        if value is None:
            return None
        try:
            return float(value)
        except (TypeError, ValueError):
            raise InputError(f'Option {name} must be a number, got {value!r}')

    def poly_option(self, name: str = 'f', num_vars: Optional[int] = None) -> Poly:
        text = str(self.option(name, ''))
        n = num_vars or self.int_option('num_vars') or infer_num_vars(text)
        return parse_poly(text, n)

    def seeded_tol(self) -> Tolerances:
        """Tolerances with the seed option applied."""
        return self.tol.with_changes(seed=self.int_option('seed', self.tol.seed))

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seeded_tol().seed)

    def to_dict(self) -> Dict[str, Any]:
        """Convert command metadata to dictionary representation."""
        return {
            'command': self.command_path,
            'display_name': self.display_name,
            'description': self.description,
            'required_options': self.required_options,
            'default_options': self.default_options,
        }
