"""Exception hierarchy shared by every module."""


class RigidityError(Exception):
    """Base class for all library errors."""


class ContractError(RigidityError, ValueError):
    """An input violates an operation's precondition."""


class DimensionError(ContractError):
    """Shapes of matrices or vectors do not fit together."""


class SingularMatrixError(ContractError):
    """A matrix that must be invertible has determinant zero."""


class DomainError(ContractError):
    """An integer parameter lies outside the supported range."""


class NotInvariantError(ContractError):
    """A measure is not invariant under the map it is paired with."""


class UnsupportedError(ContractError):
    """The requested combination is outside what can be decided exactly."""


class InputFormatError(RigidityError, ValueError):
    """A JSON literal or input file is malformed."""
