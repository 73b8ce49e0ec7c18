"""Exception types raised across the package."""


class QMonogamyError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(QMonogamyError):
    """Matrix handed to the Hermitian eigensolver is not Hermitian."""


class NoConvergence(QMonogamyError):
    """Iterative routine exhausted its sweep/evaluation cap."""


class UnknownLabel(QMonogamyError):
    """A party label does not exist on the state."""


class NotDensityMatrix(QMonogamyError):
    """Matrix failed density-matrix validation.

    The message names the violated property (hermiticity, trace,
    positivity or shape).
    """


class OutOfRange(QMonogamyError):
    """A numeric parameter is outside its documented domain."""


class NotNormalized(QMonogamyError):
    """Amplitude or weight vector does not satisfy its normalization."""


class ParseError(QMonogamyError):
    """State file or state selector could not be parsed."""


class OverlappingParties(QMonogamyError):
    """Party sets that must be disjoint share a label."""


class WrongArity(QMonogamyError):
    """Operation requires a specific number of parties."""


class BadParamLength(QMonogamyError):
    """Measurement parameter vector has the wrong length for the dimension."""


class NotPure(QMonogamyError):
    """Operation requires a pure state but purity check failed."""
