"""Exception hierarchy shared by every dimcalc module."""


class DimcalcError(Exception):
    """Base class for all dimcalc errors."""


class SystemMismatchError(DimcalcError, ValueError):
    pass


class DimensionMismatchError(DimcalcError, ValueError):
    pass


class FrameMismatchError(DimcalcError, ValueError):
    pass


class DomainError(DimcalcError, ValueError):
    """Operation undefined for the given argument (negative root, zero inverse, ...)."""


class SingularityError(DimcalcError, ArithmeticError):
    pass


class IndeterminateError(DimcalcError, ArithmeticError):
    pass


class ParseError(DimcalcError, ValueError):
    """Lexical or syntactic error; carries a 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        self.bare_message = message
        super().__init__(f"{line}:{column}: {message}")
