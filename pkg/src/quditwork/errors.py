"""Exception types shared across the library.

The CLI maps these to exit codes: ParseError -> 2, invalid-object errors -> 3,
parameter/shape errors -> 4.
"""


class QuditWorkError(Exception):
    """Base class for all library errors."""


class ParseError(QuditWorkError):
    """Input file or literal could not be parsed."""


class InvalidState(QuditWorkError):
    """State object violates its invariants (norm, hermiticity, positivity)."""


class UnsupportedShape(QuditWorkError):
    """Operation not defined for these dimensions."""


class InvalidDistribution(QuditWorkError):
    """Probability distribution violates nonnegativity or shape requirements."""


class InvalidUnitary(QuditWorkError):
    """Matrix fails the unitarity tolerance."""


class InvalidParameter(QuditWorkError):
    """Scalar parameter outside its allowed range."""


class InvalidConfig(QuditWorkError):
    """Protocol configuration is inconsistent with the state or basis."""
