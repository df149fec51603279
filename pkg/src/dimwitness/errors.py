"""Exception types shared across the package."""


class DimWitnessError(Exception):
    """Base class for every error this package raises deliberately."""


class NotHermitian(DimWitnessError):
    """A matrix failed the Hermitian symmetry check."""


class DimensionMismatch(DimWitnessError):
    """Operands live on Hilbert spaces of different dimension."""


class ShapeMismatch(DimWitnessError):
    """A probability table does not have the shape the witness expects."""


class BadArgument(DimWitnessError):
    """An argument lies outside the documented domain."""


class NotPure(DimWitnessError):
    """An operation needed pure states but a vector representation is missing."""


class IncompleteDecoding(DimWitnessError):
    """A deterministic strategy lacks a decoding entry it needs."""


class TooLarge(DimWitnessError):
    """A brute-force enumeration would exceed the search guard."""


class OutOfRange(DimWitnessError):
    """A witness value lies outside the certifiable range."""


class NotAPovm(DimWitnessError):
    """A set of effects does not sum to the identity within tolerance."""


class NonMonotonic(DimWitnessError):
    """Internal check failure: an ascent step decreased its objective."""


class FileFormatError(DimWitnessError):
    """A JSON input file is malformed or violates a load-time invariant."""
