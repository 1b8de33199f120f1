class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedError(DomainError):
    """Parameters outside the supported range (q <= 10^4, decimals <= 10^4)."""


class InsufficientParametersError(DomainError):
    """No truncation depth r <= 16 reaches the requested accuracy; increase P."""


class PreconditionError(DomainError):
    """Polynomial inputs violate F(0) = G(0) = 1 or the equal x-coefficient condition."""


class PoleError(DomainError):
    """The denominator polynomial vanishes at 1/p for a prime p in a class."""


class ParseError(ValueError):
    """Malformed polynomial expression or command-line argument."""
