"""Exception types shared by the library and the command line."""


class GenocchiError(Exception):
    pass


class UsageError(GenocchiError, ValueError):
    """Bad arguments: wrong parity, unsupported order, mismatched shapes."""


class DomainError(GenocchiError, ArithmeticError):
    """Arguments outside the region where a formula or series is defined."""
