"""Exception hierarchy. Column and row indices in messages are 1-based."""

from __future__ import annotations


class EtodimError(Exception):
    """Base class for every error raised by this package."""


class MatrixError(EtodimError, ValueError):
    pass


class EmptyMatrix(MatrixError):
    def __init__(self, message: str = "matrix has no rows or no columns"):
        super().__init__(message)


class DegenerateColumn(MatrixError):
    def __init__(self, column: int | None = None):
        self.column = column
        where = "column" if column is None else f"column {column}"
        super().__init__(f"{where} has max == min")


class OutOfRange(MatrixError):
    def __init__(self, row: int, column: int, value: float):
        self.row, self.column, self.value = row, column, value
        super().__init__(f"value {value!r} at ({row}, {column}) is outside [0, 1]")


class ZeroColumnMax(MatrixError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} has maximum 0")


class DimensionMismatch(EtodimError, ValueError):
    pass


class TooFewAlternatives(EtodimError, ValueError):
    pass


class DegenerateWeights(EtodimError, ArithmeticError):
    """Entropy weighting produced a negative or non-positive normalizer."""


class InvalidLevel(EtodimError, ValueError):
    def __init__(self, v: int):
        self.v = v
        super().__init__(f"level parameter must be >= 2, got {v}")


class UnknownAlternative(EtodimError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class EmptyIntersection(EtodimError, ValueError):
    pass


class ConstantSeries(EtodimError, ValueError):
    pass


class ParseError(EtodimError, ValueError):
    pass
