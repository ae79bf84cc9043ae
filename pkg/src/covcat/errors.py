"""Exception hierarchy shared by all covcat modules."""


class CovcatError(Exception):
    """Base class for every error raised by covcat."""


class ConstructionError(CovcatError):
    """A builder precondition failed (bad quiver, idempotents, mismatched base...)."""


class DocumentError(CovcatError):
    """A JSON document failed to parse, validate structurally, or resolve."""

    def __init__(self, message, path=None):
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path


class NotConnectedError(CovcatError):
    """An operation requiring a connected category was given a disconnected one."""


class NotCoveringError(CovcatError):
    """An operation requiring a covering was given a functor that is not one."""
