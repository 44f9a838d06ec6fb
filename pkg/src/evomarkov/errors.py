"""Exception hierarchy.

``ValidationError`` subclasses map to CLI exit status 2 and
``GuardExceeded`` subclasses to exit status 3.
"""


class EvoMarkovError(Exception):
    pass


class ValidationError(EvoMarkovError, ValueError):
    pass


class GuardExceeded(EvoMarkovError):
    pass


class NonSquare(ValidationError):
    pass


class DuplicateLabel(ValidationError):
    pass


class InvalidLabel(ValidationError):
    pass


class NonFiniteEntry(ValidationError):
    pass


class NotMarkov(ValidationError):
    def __init__(self, row: int, row_sum: float):
        self.row = row
        self.row_sum = row_sum
        super().__init__(
            f"row {row + 1} is not a probability vector (sum {row_sum!r})"
        )


class IndexOutOfRange(ValidationError, IndexError):
    pass


class EmptySet(ValidationError):
    pass


class NotClosed(ValidationError):
    def __init__(self, source: int, target: int):
        self.source = source
        self.target = target
        super().__init__(f"edge {source + 1}->{target + 1} leaves the set")


class InvalidWalk(ValidationError):
    pass


class DegenerateRow(ValidationError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row + 1} carries no probability mass")


class ParseError(ValidationError):
    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}")


class DimensionTooLarge(GuardExceeded):
    pass


class TooLarge(GuardExceeded):
    pass
