"""Exception hierarchy shared by all liealg modules."""


class LieAlgError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(LieAlgError, ZeroDivisionError):
    pass


class NonPolynomialQuotient(LieAlgError):
    """Laurent-polynomial division whose exact result has infinite support."""


class DivergentEntry(LieAlgError):
    """A scalar or structure entry has negative valuation: no limit at 0."""


class SingularMatrix(LieAlgError):
    pass


class IndexOutOfRange(LieAlgError):
    pass


class NotADerivation(LieAlgError):
    pass


class NotAlternating(LieAlgError):
    pass


class NotLieAdmissible(LieAlgError):
    pass


class NilindexTooLarge(LieAlgError):
    """The truncated group product is only exact up to nilindex 3."""


class DegreeOutOfRange(LieAlgError):
    pass


class NotACocycle(LieAlgError):
    pass


class NegativeValuation(LieAlgError):
    """An entry that must lie in the maximal ideal has valuation <= 0."""


class FirstTermNotCocycle(LieAlgError):
    """Leading term of a perturbation decomposition fails the cocycle test."""


class NotDecomposable(LieAlgError):
    """No exact flag decomposition with polynomial multipliers exists."""


class NotASubalgebra(LieAlgError):
    pass


class SaletanRequiresSingular(LieAlgError):
    pass


class DimensionMismatch(LieAlgError):
    pass


class UnknownName(LieAlgError):
    pass


class BadParams(LieAlgError):
    pass


class DuplicateBracket(LieAlgError):
    pass


class ParseError(LieAlgError):
    """Parse failure with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
