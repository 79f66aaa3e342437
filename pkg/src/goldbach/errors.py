"""
Errors module for the Goldbach sieve toolkit.

This module defines the exceptions raised by the arithmetic, group and sieve code.
"""


class GoldbachError(Exception):
    """Base class for all errors raised by the toolkit."""


class NotInvertibleError(GoldbachError, ValueError):
    """Raised when a residue has no multiplicative inverse."""


class ModulusMismatchError(GoldbachError, ValueError):
    """Raised when two operands live over different moduli."""


class CapacityError(GoldbachError):
    """Raised when a computation would exceed a hard capacity limit."""


class NoInvariantError(GoldbachError):
    """Raised when an automorphism admits no invariant bijection."""


class InvariantConstructionError(GoldbachError):
    """Raised when coset choices do not define an invariant bijection."""


class NotClosedError(GoldbachError, ValueError):
    """Raised when a set of maps is not closed under composition."""


class ReportError(GoldbachError, OSError):
    """Raised when a report cannot be written."""
