"""Exception hierarchy.

Each class carries the process exit status the CLI maps it to.
"""


class RelioptError(Exception):
    exit_code = 1


class ParameterError(RelioptError, ValueError):
    """Invalid model, contract or configuration parameters."""

    exit_code = 2


class InputError(RelioptError, ValueError):
    """Malformed or inconsistent input data."""

    exit_code = 3


class CalibrationError(RelioptError):
    """The data do not support the requested estimation."""

    exit_code = 3


class NumericalError(RelioptError, ArithmeticError):
    """A numerical routine failed to reach its tolerance.

    ``estimate`` holds the best value obtained before giving up.
    """

    exit_code = 4

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
