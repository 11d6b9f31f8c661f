"""Exception types shared across the package.

Every error raised on a documented failure path is defined here so callers
can catch them from one place.
"""


class LincheckError(Exception):
    """Base class for all package-specific errors."""


class ParseError(LincheckError):
    """Raised on malformed expression text.

    Carries the character offset of the failure and the set of token
    descriptions that would have been accepted there.
    """

    def __init__(self, message: str, position: int, expected: frozenset[str] = frozenset()):
        super().__init__(message)
        self.position = position
        self.expected = expected


class UnknownSymbol(ParseError):
    """An identifier that is neither a variable, a declared constant, nor a function."""

    def __init__(self, symbol: str, position: int):
        super().__init__(f"unknown symbol {symbol!r} at position {position}", position)
        self.symbol = symbol


class NotRational(LincheckError):
    """Expression tree contains nodes with no rational-function normal form."""


class ExpressionTooLarge(LincheckError):
    """A polynomial exceeded the term-count guard (see set_term_cap)."""


class EvalDomainError(LincheckError):
    """Numeric evaluation hit a pole or a function-domain violation.

    The offending subexpression (stringified) is carried in ``where``.
    """

    def __init__(self, message: str, where: str = ""):
        super().__init__(message)
        self.where = where


class SingularMetric(LincheckError):
    """Metric determinant is identically zero; no inverse exists."""


class NonGeodesicType(LincheckError):
    """A quadratic second-order system carries terms outside the geodesic shape."""


class DeltaIdenticallyZero(LincheckError):
    """Coefficient recovery is not defined: the recovery determinant vanishes."""


class NotConstant(LincheckError):
    """A constant-coefficient operation received variable coefficients."""


class StepLimitExceeded(LincheckError):
    """Fixed-step integration would exceed the configured step budget."""


class DegenerateFit(LincheckError):
    """Least-squares fit attempted on degenerate sample data."""


class NotSimplifiable(LincheckError):
    """A transform's quadratic form does not reduce to a rational function."""


class InputError(LincheckError):
    """Malformed input file or inconsistent command-line options."""
