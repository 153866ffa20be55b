"""Exceptions raised by the cohomology engine."""

from config import EXIT_BUDGET, EXIT_USAGE, EXIT_VERIFICATION_FAILURE


class ConfRingError(Exception):
    """Base error; carries the CLI exit code it maps to."""

    exit_code = EXIT_USAGE


class ParameterError(ConfRingError, ValueError):
    """Invalid n, point count, degree, index or option."""


class ParseError(ConfRingError, ValueError):
    """Element or expression text does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ModeMismatchError(ConfRingError):
    """Operands live over different coefficient modes."""


class NonInvertibleTwoError(ConfRingError):
    """The operation divides by 2 and the coefficient mode does not allow it."""


class ParityMismatchError(ConfRingError):
    """The operation is only defined for the other parity of n."""


class WitnessError(ConfRingError):
    """A reported witness product fails its normal-form check."""

    exit_code = EXIT_VERIFICATION_FAILURE


class BudgetExceededError(ConfRingError):
    """A configured size budget was exhausted."""

    exit_code = EXIT_BUDGET
