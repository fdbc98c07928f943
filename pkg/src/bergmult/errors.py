"""Exception types shared across the package.

CLI exit-code mapping: DomainError and InvalidInputError are parameter
problems (exit 2); NumericError means a computation did not converge or
produced non-finite values (exit 3).
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class InvalidInputError(ValueError):
    """Structurally invalid input (degenerate map, pole in the disk, ...)."""


class NumericError(RuntimeError):
    """Non-convergence or non-finite intermediate values.

    ``best`` optionally carries the best iterate / residual reached.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
