class MzmError(Exception):
    """Base class for errors raised by mzmxcorr."""


class InvalidParameterError(MzmError, ValueError):
    pass


class DegenerateDynamicsError(MzmError):
    """Raised when the occupation dynamics has no unique steady state."""


class UnsupportedModeError(MzmError):
    pass


class IntegrationError(MzmError, RuntimeError):
    pass
