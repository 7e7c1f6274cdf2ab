"""Exception types raised by the library."""


class BochnerError(Exception):
    """Base class for all library errors."""


class ConfigurationError(BochnerError, ValueError):
    """Operands live on incompatible spaces, or a configuration is invalid.

    Raised for mismatched atom lists, X dimensions or exponents, and for
    malformed problem descriptions.
    """


class DomainError(BochnerError, ValueError):
    """An argument lies outside the domain of an operation.

    Typical case: asking for the inverse image at a point outside the ball.
    """
