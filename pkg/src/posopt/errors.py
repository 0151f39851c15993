"""Exception hierarchy for posopt.

Verdicts such as "not a sum of squares" or "infeasible" are ordinary results.
Exceptions are reserved for bad input and for numerical breakdown.
"""

from typing import Optional


class PosoptError(Exception):
    """Base class for all posopt errors."""


class InputError(PosoptError, ValueError):
    """Input data is malformed or inconsistent."""


class ParseError(InputError):
    """Text input does not conform to the grammar."""

    def __init__(self, message: str, position: Optional[int] = None, text: Optional[str] = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f'{message} (at position {position})'
        super().__init__(message)


class DimensionError(InputError):
    """Operands have incompatible dimensions."""


class OddDegreeError(InputError):
    """A polynomial of odd degree was given where an even degree is required."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f'polynomial has odd degree {degree} and cannot be a sum of squares')


class SizingError(InputError):
    """A problem exceeds a configured size cap."""


class NumericalError(PosoptError):
    """A numerical routine failed to produce a trustworthy result."""

    def __init__(self, message: str, status: Optional[str] = None):
        self.status = status
        super().__init__(message)


class InfeasibleError(PosoptError):
    """A routine that needs a feasible (or strictly feasible) point found none."""


# Exit codes used by the command line front end
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit status."""
    if isinstance(error, InputError):
        return EXIT_USAGE
    return EXIT_NUMERICAL
