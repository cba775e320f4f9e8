"""Exception hierarchy shared by all modules."""


class DiracChordsError(Exception):
    pass


class ThirdPowerError(DiracChordsError, ValueError):
    """A letter would occur three or more times in one monomial."""


class OddWordError(DiracChordsError, ValueError):
    pass


class EvenWordError(DiracChordsError, ValueError):
    pass


class DuplicateLetterError(DiracChordsError, ValueError):
    pass


class NoDuplicateError(DiracChordsError, ValueError):
    pass


class NoSharedLetterError(DiracChordsError, ValueError):
    pass


class IllFormedExpressionError(DiracChordsError, ValueError):
    pass


class OccupiedVertexError(DiracChordsError, ValueError):
    pass


class NoFreeVertexError(DiracChordsError, ValueError):
    pass


class RangeError(DiracChordsError, ValueError):
    pass


class DisconnectedError(DiracChordsError, ValueError):
    pass


class ShapeError(DiracChordsError, ValueError):
    pass


class UnknownEdgeError(DiracChordsError, KeyError):
    pass


class ZeroDivisorError(DiracChordsError, ZeroDivisionError):
    pass


class MalformedGraphError(DiracChordsError, ValueError):
    pass


class MultiplicityError(DiracChordsError, ValueError):
    pass


class ExpressionSyntaxError(DiracChordsError, SyntaxError):
    """Parse failure carrying a 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
