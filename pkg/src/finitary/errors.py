"""Exception types raised across the package."""


class FinitaryError(ValueError):
    """Base class for every error raised by :mod:`finitary`."""


class WordTooLong(FinitaryError):
    pass


class LengthBudgetExceeded(FinitaryError):
    """A computation needs values of strings longer than the table provides."""


class ConditionAViolated(FinitaryError):
    """The short Hankel block has rank larger than the dimension bound."""

    def __init__(self, message, rank=None, bound=None):
        super().__init__(message)
        self.rank = rank
        self.bound = bound


class ConditionBViolated(FinitaryError):
    """A long row or column of the Hankel matrix escapes the short-word span.

    ``word`` names the offending row (suffix) or column (prefix) word and
    ``axis`` is ``"row"`` or ``"col"``.
    """

    def __init__(self, message, word=None, axis=None):
        super().__init__(message)
        self.word = word
        self.axis = axis


class DimensionShrink(FinitaryError):
    pass


class PathBudgetExceeded(FinitaryError):
    pass


class EmptyTable(FinitaryError):
    pass


class InvalidParameters(FinitaryError):
    """Model parameters violate their stochasticity or shape constraints."""


class InputError(FinitaryError):
    """Malformed input file; carries the source and the JSON field path."""

    def __init__(self, message, source="<input>", field=""):
        self.source = source
        self.field = field
        where = f"{source}:{field}" if field else source
        super().__init__(f"{where}: {message}")
