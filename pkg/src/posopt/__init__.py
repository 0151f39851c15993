"""posopt - positivity certificates and polynomial optimization by semidefinite programming."""

__version__ = "0.1.0"

from .app import create_app  # noqa: E402
from .cli import main  # noqa: E402

__all__ = ['create_app', 'main', '__version__']
