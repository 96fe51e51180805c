"""Exception hierarchy shared by the solvers and the CLI."""


class SirSeriesError(Exception):
    """Base class for all errors raised by this package."""


class ArithmeticOverflowError(SirSeriesError, ArithmeticError):
    """A series operation produced a non-finite coefficient or value."""


class CapacityError(SirSeriesError, ValueError):
    """A requested truncation degree exceeds the configured cap."""


class ParseError(SirSeriesError, ValueError):
    """A parameter document is malformed."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ValidationError(SirSeriesError, ValueError):
    """A parameter violates a model invariant (e.g. a negative rate)."""


class DivergenceError(SirSeriesError, ArithmeticError):
    """Numerical integration produced a non-finite state."""

    def __init__(self, message, time=None):
        self.time = time
        super().__init__(message)
