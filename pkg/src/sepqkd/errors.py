"""Exception hierarchy shared by the library and the command line."""


class SepQKDError(Exception):
    """Base class for all errors raised by :mod:`sepqkd`."""


class ValidationError(SepQKDError, ValueError):
    """Malformed input: wrong shape, asymmetric matrix, bad index, bad config."""


class DomainError(SepQKDError, ValueError):
    """A parameter lies outside the domain of a formula."""


class NumericalError(SepQKDError, ArithmeticError):
    """An eigen-solver or root search failed to produce a usable result."""
