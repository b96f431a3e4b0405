"""Exception hierarchy shared by all d0l modules."""


class D0LError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(D0LError):
    """Malformed system file or word text."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", col {col}" if col is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)


class ErasingSystemError(D0LError):
    """A decision procedure was asked to run on an erasing (non-propagating) morphism."""


class BudgetExceededError(D0LError):
    """A word grew past the configured length budget."""


class NotInCorpusError(D0LError):
    """A query word is not among the enumerated factors of the corpus."""


class InvariantError(D0LError):
    """An internal consistency check failed; always a bug."""
