"""Exception types raised by Swapnet's models and engine."""


class SwapnetError(ValueError):
    """Base class for every domain error the toolkit raises."""


class WidthOutOfRange(SwapnetError):
    """A line count outside 1..MAX_WIDTH."""


class ValueOutOfRange(SwapnetError):
    """An integer that does not fit the declared width."""


class WidthMismatch(SwapnetError):
    """Two operands that must share a width do not."""


class NotAPermutation(SwapnetError):
    """A specification repeats an output value."""

    def __init__(self, value: int):
        super().__init__(f"not a permutation: value {value} appears more than once")
        self.value = value


class NotAdjacent(SwapnetError):
    """Two bit strings that must differ in exactly one line do not."""


class GateBudgetExceeded(SwapnetError):
    """Synthesis emitted more gates than its safety cap allows."""


class ArityTooLarge(SwapnetError):
    """A template uses more abstract lines than can be validated."""


class TemplateInvalid(SwapnetError):
    """A template was refused at registration."""


class TooManyLines(SwapnetError):
    """An embedding would need more than MAX_WIDTH lines."""


class BindingInvalid(SwapnetError):
    """An input/output wiring is not injective or does not fit the circuit."""


class RowCountMismatch(SwapnetError):
    """A truth table has the wrong number of rows for its input count."""


class EquivalenceViolation(SwapnetError):
    """An optimizer rewrite changed the realized function."""


class ParseError(SwapnetError):
    """Malformed text input, located by 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column


class UnknownLine(ParseError):
    """A gate names a line that does not exist."""


class SelfControl(ParseError):
    """A gate lists its target among its controls."""
