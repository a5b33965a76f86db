"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class CombidentError(Exception):
    """Base class for every error raised on purpose by this package."""


class InputError(CombidentError, ValueError):
    """Malformed or out-of-contract input (exit code 2 on the command line)."""


class ModeMismatchError(InputError, TypeError):
    """A rational weight met a polynomial weight in one computation."""


class NotAcyclicError(InputError):
    pass


class SingularMatrixError(InputError, ArithmeticError):
    pass


class CapExceeded(CombidentError):
    """An enumeration or expansion would exceed its hard size limit."""
