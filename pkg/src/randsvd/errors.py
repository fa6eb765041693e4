"""Exception hierarchy shared by every module of the package."""


class RandSVDError(Exception):
    """Base class for all package errors."""


class DimensionError(RandSVDError, ValueError):
    pass


class ParameterError(RandSVDError, ValueError):
    pass


class NonFiniteError(RandSVDError, ValueError):
    pass


class AsymmetryError(RandSVDError, ValueError):
    pass


class OrderingError(RandSVDError, ValueError):
    pass


class OrthonormalityError(RandSVDError, ValueError):
    pass


class ConvergenceError(RandSVDError, ArithmeticError):
    pass


class RankDeficiencyError(RandSVDError, ArithmeticError):
    pass


class GapError(RandSVDError, ArithmeticError):
    pass


class FormatError(RandSVDError, ValueError):
    """Malformed input file. Carries the 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


# error classes that the CLI maps to exit code 4
NUMERICAL_ERRORS = (
    ConvergenceError,
    RankDeficiencyError,
    GapError,
    AsymmetryError,
    NonFiniteError,
)
