"""Exception types shared across the package.

The CLI maps these onto exit codes, so each carries the code it should
produce when it escapes a command.
"""


class NPKError(Exception):
    exit_code = 1


class ParseError(NPKError, ValueError):
    exit_code = 1


class DimensionError(NPKError, ValueError):
    exit_code = 1


class NotNPotentError(NPKError, ValueError):
    exit_code = 2


class FieldError(NPKError, ValueError):
    """An element or matrix does not lie in the required cyclotomic field."""

    exit_code = 3


class UnrealizableError(NPKError, ValueError):
    """A requested rank pattern or class has no representative over the field."""

    exit_code = 3


class SingularMatrixError(NPKError, ZeroDivisionError):
    exit_code = 1


class VerificationError(NPKError, AssertionError):
    """A certificate failed one of its defining identities."""

    exit_code = 4

    def __init__(self, identity, message=None):
        self.identity = identity
        super().__init__(message or f"identity failed: {identity}")
