"""Exception types shared across the package.

Plain input mistakes (division by a zero operator, gcd of two zeros) raise
the matching builtins ``ZeroDivisionError`` / ``ValueError``; everything
domain specific derives from :class:`OrecalcError`.
"""


class OrecalcError(Exception):
    """Base class for errors raised by orecalc."""


class ShapeError(OrecalcError):
    """Operands have incompatible sizes, or a matrix literal is ragged."""


class DegenerateOperatorError(OrecalcError):
    """An operation required a non-degenerate matrix operator and got none."""


class NotMinimalError(OrecalcError):
    """A fraction that must be in lowest terms has a nontrivial right divisor."""


class NotStronglyCoprimeError(OrecalcError):
    """The denominators fail the strong coprimeness degree test."""


class PreconditionError(OrecalcError):
    """Input data violates a stated precondition (e.g. unequal products)."""


class InconsistentInputError(OrecalcError):
    """Inputs contradict each other (e.g. a claimed solution fails to check)."""


class InternalCheckError(OrecalcError):
    """An internal cross-multiplication certificate failed; indicates a bug."""


class ParseError(OrecalcError):
    """Syntax error in the text grammar, with position information."""

    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
