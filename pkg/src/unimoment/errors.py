"""Exception hierarchy for unimoment.

Every error raised on purpose by this package derives from UnimomentError, so
callers can catch one type at the boundary.  Errors that signal bad *input*
(rather than a failed computation) also derive from ValueError.
"""
from __future__ import annotations


class UnimomentError(Exception):
    """Base class for all errors raised by unimoment."""


class InvalidParams(UnimomentError, ValueError):
    """A family or operation was given parameters outside its domain."""


class NonPolynomialQuotient(UnimomentError):
    """A factored product does not divide out to a polynomial."""


class NegativeCoefficient(UnimomentError):
    """An expansion produced a negative coefficient where none is allowed."""


class ZeroPolynomial(UnimomentError):
    """The zero polynomial was passed to an operation that needs mass."""


class ZeroVariance(UnimomentError):
    """A degenerate (single-atom) distribution has no normalized moments."""


class BadConstantTerm(UnimomentError):
    """Series logarithm needs a series with constant term 1."""


class IndexOutOfRange(UnimomentError, ValueError):
    """A table lookup asked for an index the table does not define."""


class NotPalindromic(UnimomentError):
    """The coefficient list is not symmetric, so the operation does not apply."""


class OddDegree(UnimomentError):
    """The operation is only defined for even-degree (even-span) inputs."""


class EvenDegree(UnimomentError):
    """The operation is only defined for odd-degree (odd-span) inputs."""


class RootsOffCircle(UnimomentError):
    """The polynomial certifiably has a root off the unit circle."""

    def __init__(self, message: str, witness: object | None = None):
        super().__init__(message)
        self.witness = witness


class DegenerateAtOne(RootsOffCircle):
    """The polynomial vanishes at z = 1, so it cannot be normalized."""


class UnresolvedMultiplicity(UnimomentError):
    """Root clusters could not be separated or certified at the working precision."""


class MismatchBeyondTolerance(UnimomentError):
    """Two routes to the same quantity disagree by more than the allowed error."""


class DegenerateSpec(UnimomentError):
    """A factored description with no mass (empty exponent lists)."""


class NoKnownLimit(UnimomentError, ValueError):
    """No closed-form limiting moments are on record for the requested family."""


class UnknownLaw(UnimomentError, ValueError):
    """The requested reference law name is not recognized."""
