"""Exception types shared across the package."""


class HomcxError(Exception):
    """Base class for all package errors."""


class ResourceLimitError(HomcxError):
    """A configurable enumeration or size cap was exceeded."""


class SoundnessError(HomcxError):
    """An internal consistency check failed (a bug, never a user error)."""


class NotFreeError(HomcxError):
    """A Z/2 action that must be free fixes some cell."""


class NotChainMapError(HomcxError):
    """A linear map does not commute with the boundary operators."""


class DisconnectedError(HomcxError):
    """An invariant that is only defined per component was requested globally."""


class FormatError(HomcxError, ValueError):
    """Malformed text input; ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
