"""Exception types shared across the package."""


class IdakError(Exception):
    """Base class for every package-specific error."""


class GroupMismatchError(IdakError):
    """Operands belong to different group instantiations."""


class DecodeError(IdakError):
    """A byte string is not a canonical element encoding."""


class BackendCapabilityError(IdakError):
    """The active group backend cannot perform the requested operation.

    The toy backend never raises this; a backend over a real pairing
    curve must raise it from `dlog` and `dbdh_check`, which only make
    sense when exponents are recoverable.
    """


class EmptyIdentityError(IdakError):
    """Identity strings must be nonempty."""


class InvalidElementError(IdakError):
    """A received protocol message is not an acceptable group element."""


class SessionStateError(IdakError):
    """The session is not in the state this operation requires."""


class CapabilityError(IdakError):
    """An adversary capability was exercised without being enabled."""


class QueryError(IdakError):
    """An adversary query named an unknown session or identity, or broke
    the experiment's query discipline (double Test, Guess before Test)."""
